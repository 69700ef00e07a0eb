#include "qfim/bloch.hpp"

#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qfim {

namespace {

constexpr double kMatrixTolerance = 1e-12;

}  // namespace

BlochVector bloch_from_angles(double theta, double phi) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
        throw std::domain_error("bloch_from_angles: theta must lie in [0, pi]");
    }
    if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) {
        throw std::domain_error("bloch_from_angles: phi must lie in [0, 2*pi)");
    }
    const double st = std::sin(theta);
    return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

DensityMatrix2 DensityMatrix2::from_matrix(const Eigen::Matrix2cd& m) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (std::abs(m(0, 1) - std::conj(m(1, 0))) > kMatrixTolerance * scale ||
        std::abs(m(0, 0).imag()) > kMatrixTolerance * scale ||
        std::abs(m(1, 1).imag()) > kMatrixTolerance * scale) {
        throw PhysicalityError("DensityMatrix2: matrix is not Hermitian");
    }
    const double trace = m(0, 0).real() + m(1, 1).real();
    if (std::abs(trace - 1.0) > kMatrixTolerance) {
        throw PhysicalityError("DensityMatrix2: trace differs from 1");
    }
    // Eigenvalues are (1 +- |w|) / 2; positivity means |w| <= 1 (+ 2e-12 slack).
    const double w1 = 2.0 * m(0, 1).real();
    const double w2 = -2.0 * m(0, 1).imag();
    const double w3 = m(0, 0).real() - m(1, 1).real();
    if (0.5 * (1.0 - std::sqrt(w1 * w1 + w2 * w2 + w3 * w3)) < -kMatrixTolerance) {
        throw PhysicalityError("DensityMatrix2: matrix has a negative eigenvalue");
    }
    return DensityMatrix2(m);
}

DensityMatrix2 density_from_bloch(const BlochVector& w) {
    const double r = norm(w);
    if (r > 1.0 + kPhysicalityTolerance) {
        std::ostringstream msg;
        msg << "density_from_bloch: |w| = " << r << " exceeds the unit ball";
        throw PhysicalityError(msg.str());
    }
    Eigen::Matrix2cd m;
    m(0, 0) = std::complex<double>(0.5 * (1.0 + w.w3), 0.0);
    m(1, 1) = std::complex<double>(0.5 * (1.0 - w.w3), 0.0);
    m(0, 1) = std::complex<double>(0.5 * w.w1, -0.5 * w.w2);
    m(1, 0) = std::complex<double>(0.5 * w.w1, 0.5 * w.w2);
    return DensityMatrix2(m);
}

BlochVector bloch_from_density(const DensityMatrix2& rho) {
    const Eigen::Matrix2cd& m = rho.matrix();
    return {2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(), m(0, 0).real() - m(1, 1).real()};
}

} // namespace qfim
