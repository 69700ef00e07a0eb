#include "qfim/qfi.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace qfim::qfi {

namespace {

using std::complex;

// Analytic eigendecomposition of a 2x2 Hermitian matrix. The pivot is chosen
// to avoid cancellation in the eigenvector components.
struct HermitianEigen2 {
    std::array<double, 2> values;                   // descending
    std::array<Eigen::Vector2cd, 2> vectors;
};

HermitianEigen2 decompose_hermitian(const Eigen::Matrix2cd& m) {
    const double a = m(0, 0).real();
    const double c = m(1, 1).real();
    const complex<double> b = m(0, 1);
    const double mean = 0.5 * (a + c);
    const double half_diff = 0.5 * (a - c);
    const double radius = std::hypot(half_diff, std::abs(b));

    HermitianEigen2 out;
    out.values = {mean + radius, mean - radius};

    if (radius == 0.0) {
        out.vectors[0] = Eigen::Vector2cd(1.0, 0.0);
        out.vectors[1] = Eigen::Vector2cd(0.0, 1.0);
        return out;
    }
    Eigen::Vector2cd v;
    if (half_diff >= 0.0) {
        v = Eigen::Vector2cd(complex<double>(radius + half_diff, 0.0), std::conj(b));
    } else {
        v = Eigen::Vector2cd(b, complex<double>(radius - half_diff, 0.0));
    }
    v.normalize();
    out.vectors[0] = v;
    out.vectors[1] = Eigen::Vector2cd(-std::conj(v(1)), std::conj(v(0)));
    return out;
}

void require_hermitian(const Eigen::Matrix2cd& m, const char* where) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (std::abs(m(0, 1) - std::conj(m(1, 0))) > 1e-12 * scale ||
        std::abs(m(0, 0).imag()) > 1e-12 * scale || std::abs(m(1, 1).imag()) > 1e-12 * scale) {
        throw std::invalid_argument(std::string(where) + ": matrix is not Hermitian");
    }
}

void require_nonnegative_tau(double tau, const char* where) {
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw std::domain_error(std::string(where) + ": tau must be nonnegative");
    }
}

} // namespace

double qfi_bloch(const BlochVector& w, const BlochVector& dw) {
    const double r2 = norm_squared(w);
    if (std::sqrt(r2) > 1.0 + kPhysicalityTolerance) {
        throw PhysicalityError("qfi_bloch: |w| exceeds the unit ball");
    }
    const double gap = 1.0 - r2;
    const double grad2 = norm_squared(dw);
    const double radial = dot(w, dw);
    if (gap < kPureEpsilon) {
        // Pure state: the second term is 0/0 and vanishes along any family
        // that keeps |w| on the sphere.
        if (std::abs(radial) > std::sqrt(kPureEpsilon)) {
            throw InconsistentDerivativeError(
                "qfi_bloch: pure state with a derivative that moves |w| off the sphere");
        }
        return grad2;
    }
    return grad2 + radial * radial / gap;
}

double qfi_spectral(const DensityMatrix2& rho, const Eigen::Matrix2cd& drho) {
    require_hermitian(drho, "qfi_spectral");
    const HermitianEigen2 eig = decompose_hermitian(rho.matrix());

    double sum = 0.0;
    for (int m = 0; m < 2; ++m) {
        for (int n = 0; n < 2; ++n) {
            const double weight = eig.values[m] + eig.values[n];
            if (weight < kEigenvalueCutoff) {
                continue;
            }
            const complex<double> elem = eig.vectors[m].dot(drho * eig.vectors[n]);
            sum += 2.0 * std::norm(elem) / weight;
        }
    }
    return sum;
}

BlochVector parameter_derivative(ParameterTag param, const AtomSpec& atom,
                                 const Environment& env, double tau) {
    require_nonnegative_tau(tau, "parameter_derivative");
    const auto coeffs = dynamics::kossakowski_coefficients(atom, env);
    // cos/sin of (Omega tau + phi) by angle addition, so the phase stays
    // consistent to rounding with propagate_bloch acting on the initial state
    // (rounding the sum directly loses ~ulp(Omega tau) of phase, which the
    // w . d_phi w = 0 identity is first-order sensitive to).
    const double ca = std::cos(coeffs.omega * tau);
    const double sa = std::sin(coeffs.omega * tau);
    const double cphi = std::cos(atom.phi());
    const double sphi = std::sin(atom.phi());
    const double cp = ca * cphi - sa * sphi;
    const double sp = sa * cphi + ca * sphi;
    const double st = std::sin(atom.theta());
    const double ct = std::cos(atom.theta());
    const double transverse = std::exp(-2.0 * coeffs.a * tau);
    const double longitudinal = std::exp(-4.0 * coeffs.a * tau);

    switch (param) {
    case ParameterTag::theta:
        return {ct * cp * transverse, ct * sp * transverse, -st * longitudinal};
    case ParameterTag::phi:
        return {-st * sp * transverse, st * cp * transverse, 0.0};
    case ParameterTag::omega0: {
        // d/domega0 of the evolved state: the phase advances at rate tau
        // (dOmega/domega0 = 1) while the decay envelope responds through
        // dA/domega0 = (dgamma/domega0) / 4.
        const double da = 0.25 * dynamics::decay_rate_domega0(atom, env);
        return {st * transverse * tau * (-sp - 2.0 * da * cp),
                st * transverse * tau * (cp - 2.0 * da * sp),
                -4.0 * tau * da * longitudinal * (ct + 1.0)};
    }
    }
    throw std::logic_error("parameter_derivative: unreachable");
}

double qfi_theta_closed(const AtomSpec& atom, const Environment& env, double tau) {
    require_nonnegative_tau(tau, "qfi_theta_closed");
    return std::exp(-dynamics::effective_decay_rate(atom, env) * tau);
}

double qfi_phi_closed(const AtomSpec& atom, const Environment& env, double tau) {
    require_nonnegative_tau(tau, "qfi_phi_closed");
    const double st = std::sin(atom.theta());
    return st * st * std::exp(-dynamics::effective_decay_rate(atom, env) * tau);
}

double qfi_frequency_exact(const AtomSpec& atom, const Environment& env, double tau) {
    require_nonnegative_tau(tau, "qfi_frequency_exact");
    const auto coeffs = dynamics::kossakowski_coefficients(atom, env);
    const BlochVector w = dynamics::propagate_bloch(
        bloch_from_angles(atom.theta(), atom.phi()), coeffs, tau);
    return qfi_bloch(w, parameter_derivative(ParameterTag::omega0, atom, env, tau));
}

double qfi_frequency_approx(const AtomSpec& atom, const Environment& env, double tau) {
    require_nonnegative_tau(tau, "qfi_frequency_approx");
    const double gamma = dynamics::effective_decay_rate(atom, env);
    const double dgamma = dynamics::decay_rate_domega0(atom, env);
    const double st = std::sin(atom.theta());
    const double ct = std::cos(atom.theta());
    const double envelope = std::exp(-gamma * tau) * tau * tau;
    const double bracket = 1.0 + 0.25 * st * st + ct * (ct + 2.0) * std::exp(-gamma * tau);
    return st * st * envelope + 16.0 * dgamma * dgamma * bracket * envelope;
}

namespace {

Eigen::Matrix2cd half_pauli(const BlochVector& v) {
    Eigen::Matrix2cd m;
    m(0, 0) = complex<double>(0.5 * v.w3, 0.0);
    m(1, 1) = complex<double>(-0.5 * v.w3, 0.0);
    m(0, 1) = complex<double>(0.5 * v.w1, -0.5 * v.w2);
    m(1, 0) = complex<double>(0.5 * v.w1, 0.5 * v.w2);
    return m;
}

} // namespace

double qfi_value(ParameterTag param, Method method, const AtomSpec& atom,
                 const Environment& env, double tau) {
    if (method == Method::closed_form) {
        switch (param) {
        case ParameterTag::theta: return qfi_theta_closed(atom, env, tau);
        case ParameterTag::phi: return qfi_phi_closed(atom, env, tau);
        case ParameterTag::omega0: return qfi_frequency_approx(atom, env, tau);
        }
    }
    const auto coeffs = dynamics::kossakowski_coefficients(atom, env);
    const BlochVector w = dynamics::propagate_bloch(
        bloch_from_angles(atom.theta(), atom.phi()), coeffs, tau);
    const BlochVector dw = parameter_derivative(param, atom, env, tau);
    if (method == Method::bloch_form) {
        return qfi_bloch(w, dw);
    }
    return qfi_spectral(density_from_bloch(w), half_pauli(dw));
}

std::vector<QfiSample> qfi_curve(ParameterTag param, Method method, const AtomSpec& atom,
                                 const Environment& env,
                                 std::span<const double> gamma0_tau_grid) {
    std::vector<QfiSample> samples;
    samples.reserve(gamma0_tau_grid.size());
    for (double gt : gamma0_tau_grid) {
        samples.push_back({gt, qfi_value(param, method, atom, env, gt / atom.gamma0()), method});
    }
    return samples;
}

} // namespace qfim::qfi
