// bloch.hpp — Bloch-vector and density-matrix representations of a qubit

#pragma once

#include <Eigen/Core>

#include <cmath>

#include "qfim/errors.hpp"

namespace qfim {

// State rho = (I + w . sigma) / 2; |w| = 1 for pure states.
struct BlochVector {
    double w1 = 0.0;
    double w2 = 0.0;
    double w3 = 0.0;
};

inline BlochVector operator+(const BlochVector& a, const BlochVector& b) {
    return {a.w1 + b.w1, a.w2 + b.w2, a.w3 + b.w3};
}
inline BlochVector operator-(const BlochVector& a, const BlochVector& b) {
    return {a.w1 - b.w1, a.w2 - b.w2, a.w3 - b.w3};
}
inline BlochVector operator*(double s, const BlochVector& a) {
    return {s * a.w1, s * a.w2, s * a.w3};
}

inline double dot(const BlochVector& a, const BlochVector& b) {
    return a.w1 * b.w1 + a.w2 * b.w2 + a.w3 * b.w3;
}
inline double norm_squared(const BlochVector& a) { return dot(a, a); }
inline double norm(const BlochVector& a) { return std::sqrt(norm_squared(a)); }

// |w| may exceed 1 by at most this much before a state is rejected.
inline constexpr double kPhysicalityTolerance = 1e-9;

// (sin t cos p, sin t sin p, cos t); throws for angles outside
// [0, pi] x [0, 2 pi).
BlochVector bloch_from_angles(double theta, double phi);

// 2x2 Hermitian, unit-trace, positive-semidefinite matrix.
class DensityMatrix2 {
public:
    // Validates Hermiticity, unit trace (1e-12) and eigenvalues >= -1e-12.
    static DensityMatrix2 from_matrix(const Eigen::Matrix2cd& m);

    const Eigen::Matrix2cd& matrix() const noexcept { return m_; }

private:
    explicit DensityMatrix2(const Eigen::Matrix2cd& m) : m_(m) {}
    friend DensityMatrix2 density_from_bloch(const BlochVector&);

    Eigen::Matrix2cd m_;
};

// rho = (I + w . sigma) / 2; throws PhysicalityError for |w| > 1 + 1e-9.
DensityMatrix2 density_from_bloch(const BlochVector& w);

// w_i = Tr(rho sigma_i).
BlochVector bloch_from_density(const DensityMatrix2& rho);

} // namespace qfim
