// atom.hpp — atom description, dipole polarization weights, and environment
//
// All of the physics downstream depends only on the dimensionless combinations
// gamma0*tau, gamma0/omega0 and zeta = omega0*z0/c, so the unit of omega0 and
// gamma0 is the caller's choice as long as it is consistent.

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <variant>

namespace qfim {

// Relative polarizability weights (alpha_x, alpha_y, alpha_z) of the atomic
// dipole. Inputs are normalized to unit sum on construction; a sum deviating
// from 1 by more than 1e-6 is flagged rather than rejected.
class Polarization {
public:
    Polarization(double ax, double ay, double az) {
        if (!(std::isfinite(ax) && std::isfinite(ay) && std::isfinite(az))) {
            throw std::domain_error("Polarization: weights must be finite");
        }
        if (ax < 0.0 || ay < 0.0 || az < 0.0) {
            throw std::domain_error("Polarization: weights must be nonnegative");
        }
        raw_sum_ = ax + ay + az;
        if (raw_sum_ <= 0.0) {
            throw std::domain_error("Polarization: weights sum to zero");
        }
        ax_ = ax / raw_sum_;
        ay_ = ay / raw_sum_;
        az_ = az / raw_sum_;
    }

    static Polarization isotropic()  { return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}; }
    static Polarization transverse() { return {0.5, 0.5, 0.0}; }
    static Polarization axial()      { return {0.0, 0.0, 1.0}; }

    double alpha_x() const noexcept { return ax_; }
    double alpha_y() const noexcept { return ay_; }
    double alpha_z() const noexcept { return az_; }

    // Sum of the weights as given, before normalization.
    double raw_sum() const noexcept { return raw_sum_; }
    bool normalization_warning() const noexcept { return std::abs(raw_sum_ - 1.0) > 1e-6; }

private:
    double ax_, ay_, az_;
    double raw_sum_;
};

// Transition frequency, free-space decay rate, and the initial pure state
// angles cos(theta/2)|+> + e^{i phi} sin(theta/2)|->.
class AtomSpec {
public:
    AtomSpec(double omega0, double gamma0, double theta, double phi)
        : omega0_(omega0), gamma0_(gamma0), theta_(theta), phi_(phi) {
        if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
            throw std::domain_error("AtomSpec: omega0 must be positive");
        }
        if (!(gamma0 > 0.0) || !std::isfinite(gamma0)) {
            throw std::domain_error("AtomSpec: gamma0 must be positive");
        }
        if (!(gamma0 / omega0 < 1.0)) {
            throw std::domain_error("AtomSpec: gamma0/omega0 >= 1 is outside the weak-coupling model");
        }
        if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
            throw std::domain_error("AtomSpec: theta must lie in [0, pi]");
        }
        if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) {
            throw std::domain_error("AtomSpec: phi must lie in [0, 2*pi)");
        }
    }

    double omega0() const noexcept { return omega0_; }
    double gamma0() const noexcept { return gamma0_; }
    double theta() const noexcept { return theta_; }
    double phi() const noexcept { return phi_; }

    double coupling_ratio() const noexcept { return gamma0_ / omega0_; }
    // The master equation assumes gamma0 << omega0.
    bool weak_coupling_warning() const noexcept { return coupling_ratio() > 1e-2; }

private:
    double omega0_;
    double gamma0_;
    double theta_;
    double phi_;
};

// Free space: the response is polarization-independent, gamma = gamma0.
struct Unbounded {};

// Perfectly reflecting plane at z = 0, atom at distance z0 with
// zeta = omega0 * z0 / c (z0 in units of c/omega0). The dipole orientation
// weights select the mix of parallel and perpendicular response.
struct Boundary {
    double zeta;
    Polarization alpha;
};

using Environment = std::variant<Unbounded, Boundary>;

} // namespace qfim
