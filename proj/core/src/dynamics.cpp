#include "qfim/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qfim/boundary.hpp"

namespace qfim::dynamics {

namespace {

double boundary_modification(const Boundary& b) {
    // 1 - f is nonnegative for all u > 0; clamp stray rounding at u -> 0.
    return std::max(0.0, 1.0 - boundary::f_eff(b.alpha, b.zeta));
}

} // namespace

DissipatorCoefficients kossakowski_coefficients(const AtomSpec& atom, const Environment& env) {
    DissipatorCoefficients coeffs;
    coeffs.omega = atom.omega0();
    coeffs.ratio_b_over_a = 1.0;
    const double base = 0.25 * atom.gamma0();
    if (const auto* b = std::get_if<Boundary>(&env)) {
        coeffs.a = base * boundary_modification(*b);
    } else {
        coeffs.a = base;
    }
    coeffs.b = coeffs.a;
    return coeffs;
}

double effective_decay_rate(const AtomSpec& atom, const Environment& env) {
    if (const auto* b = std::get_if<Boundary>(&env)) {
        return atom.gamma0() * boundary_modification(*b);
    }
    return atom.gamma0();
}

double decay_rate_domega0(const AtomSpec& atom, const Environment& env) {
    const double slope0 = 3.0 * atom.gamma0() / atom.omega0();
    if (const auto* b = std::get_if<Boundary>(&env)) {
        const double u = 2.0 * b->zeta;
        const double f = boundary::f_eff(b->alpha, b->zeta);
        const double df_du = boundary::df_eff_du(b->alpha, u);
        return slope0 * (1.0 - f) - atom.gamma0() * df_du * (u / atom.omega0());
    }
    return slope0;
}

BlochVector propagate_bloch(const BlochVector& initial, const DissipatorCoefficients& coeffs,
                            double tau) {
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw std::domain_error("propagate_bloch: tau must be nonnegative");
    }
    const double transverse = std::exp(-2.0 * coeffs.a * tau);
    const double longitudinal = std::exp(-4.0 * coeffs.a * tau);
    const double angle = coeffs.omega * tau;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {transverse * (initial.w1 * c - initial.w2 * s),
            transverse * (initial.w1 * s + initial.w2 * c),
            initial.w3 * longitudinal - coeffs.ratio_b_over_a * (1.0 - longitudinal)};
}

BlochVector lindblad_rhs(const BlochVector& w, const DissipatorCoefficients& coeffs) {
    return {-coeffs.omega * w.w2 - 2.0 * coeffs.a * w.w1,
            coeffs.omega * w.w1 - 2.0 * coeffs.a * w.w2,
            -4.0 * coeffs.a * w.w3 - 4.0 * coeffs.b};
}

namespace {

// Dormand-Prince 5(4) with FSAL and a PI step-size controller. The generator
// is autonomous, so the stage time fractions never enter.
struct Dopri5 {
    static constexpr std::array<double, 21> a{
        1.0 / 5.0,
        3.0 / 40.0,        9.0 / 40.0,
        44.0 / 45.0,      -56.0 / 15.0,      32.0 / 9.0,
        19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0,
        9017.0 / 3168.0,  -355.0 / 33.0,     46732.0 / 5247.0,  49.0 / 176.0,
        -5103.0 / 18656.0,
        35.0 / 384.0,      0.0,              500.0 / 1113.0,    125.0 / 192.0,
        -2187.0 / 6784.0,  11.0 / 84.0};

    // b - b_hat: the embedded 4th-order error weights.
    static constexpr std::array<double, 7> e{
        71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0, -17253.0 / 339200.0,
        22.0 / 525.0,   -1.0 / 40.0};
};

} // namespace

BlochVector integrate_master_equation(const BlochVector& initial,
                                      const DissipatorCoefficients& coeffs, double tau,
                                      double rel_tol, double abs_tol) {
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw std::domain_error("integrate_master_equation: tau must be nonnegative");
    }
    if (!(rel_tol > 0.0 && rel_tol <= 1e-3) || !(abs_tol > 0.0 && abs_tol <= 1e-3)) {
        throw std::domain_error("integrate_master_equation: tolerances must lie in (0, 1e-3]");
    }
    if (tau == 0.0) {
        return initial;
    }

    BlochVector y = initial;
    BlochVector k1 = lindblad_rhs(y, coeffs);
    double t = 0.0;
    double h = tau * 1e-3;
    double prev_error = 1.0;
    bool have_prev = false;

    // The contract is on the final state, not per step; accumulated error
    // over a long span runs ~20x the local control, so step at a fraction of
    // the requested tolerances.
    const double rel_local = 0.05 * rel_tol;
    const double abs_local = 0.05 * abs_tol;

    constexpr double kSafety = 0.9;
    constexpr double kMinShrink = 0.2;
    constexpr double kMaxGrow = 10.0;
    constexpr long kMaxSteps = 10'000'000;

    const auto error_norm = [&](const BlochVector& err, const BlochVector& y_old,
                                const BlochVector& y_new) {
        double sum = 0.0;
        const double scale1 =
            abs_local + rel_local * std::max(std::abs(y_old.w1), std::abs(y_new.w1));
        const double scale2 =
            abs_local + rel_local * std::max(std::abs(y_old.w2), std::abs(y_new.w2));
        const double scale3 =
            abs_local + rel_local * std::max(std::abs(y_old.w3), std::abs(y_new.w3));
        sum += (err.w1 / scale1) * (err.w1 / scale1);
        sum += (err.w2 / scale2) * (err.w2 / scale2);
        sum += (err.w3 / scale3) * (err.w3 / scale3);
        return std::sqrt(sum / 3.0);
    };

    for (long step = 0; step < kMaxSteps; ++step) {
        const double remaining = tau - t;
        // The last accepted step may land a few ulps short of tau; that still
        // counts as reaching the endpoint.
        if (remaining <= 4.0 * std::numeric_limits<double>::epsilon() * tau) {
            return y;
        }
        h = std::min(h, remaining);
        if (h < 32.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), tau)) {
            throw IntegrationError("integrate_master_equation: step size underflow", t);
        }

        const auto& A = Dopri5::a;
        const BlochVector k2 = lindblad_rhs(y + (h * A[0]) * k1, coeffs);
        const BlochVector k3 = lindblad_rhs(y + (h * A[1]) * k1 + (h * A[2]) * k2, coeffs);
        const BlochVector k4 =
            lindblad_rhs(y + (h * A[3]) * k1 + (h * A[4]) * k2 + (h * A[5]) * k3, coeffs);
        const BlochVector k5 = lindblad_rhs(
            y + (h * A[6]) * k1 + (h * A[7]) * k2 + (h * A[8]) * k3 + (h * A[9]) * k4, coeffs);
        const BlochVector k6 =
            lindblad_rhs(y + (h * A[10]) * k1 + (h * A[11]) * k2 + (h * A[12]) * k3 +
                             (h * A[13]) * k4 + (h * A[14]) * k5,
                         coeffs);
        const BlochVector y_new = y + (h * A[15]) * k1 + (h * A[17]) * k3 + (h * A[18]) * k4 +
                                  (h * A[19]) * k5 + (h * A[20]) * k6;
        const BlochVector k7 = lindblad_rhs(y_new, coeffs);

        const auto& E = Dopri5::e;
        const BlochVector err = (h * E[0]) * k1 + (h * E[2]) * k3 + (h * E[3]) * k4 +
                                (h * E[4]) * k5 + (h * E[5]) * k6 + (h * E[6]) * k7;
        const double error = error_norm(err, y, y_new);

        if (error <= 1.0) {
            t += h;
            y = y_new;
            k1 = k7;  // FSAL
            // PI controller (orders 0.7/5 and 0.4/5).
            double factor = kSafety * std::pow(std::max(error, 1e-10), -0.14);
            if (have_prev) {
                factor *= std::pow(prev_error, 0.08);
            }
            h *= std::clamp(factor, kMinShrink, kMaxGrow);
            prev_error = std::max(error, 1e-10);
            have_prev = true;
        } else {
            h *= std::clamp(kSafety * std::pow(error, -0.2), kMinShrink, 1.0);
        }
    }
    throw IntegrationError("integrate_master_equation: step budget exhausted", t);
}

BlochVector steady_state(const DissipatorCoefficients& coeffs) {
    if (!(coeffs.a > 0.0)) {
        throw NoSteadyStateError("steady_state: unitary dynamics (A = 0) has no attractor");
    }
    return {0.0, 0.0, -coeffs.ratio_b_over_a};
}

std::vector<EvolutionRecord> evolve_trajectory(const AtomSpec& atom, const Environment& env,
                                               std::span<const double> gamma0_tau_grid) {
    const DissipatorCoefficients coeffs = kossakowski_coefficients(atom, env);
    const BlochVector initial = bloch_from_angles(atom.theta(), atom.phi());
    std::vector<EvolutionRecord> records;
    records.reserve(gamma0_tau_grid.size());
    for (double gt : gamma0_tau_grid) {
        EvolutionRecord rec;
        rec.gamma0_tau = gt;
        rec.bloch = propagate_bloch(initial, coeffs, gt / atom.gamma0());
        rec.purity = norm(rec.bloch);
        records.push_back(rec);
    }
    return records;
}

} // namespace qfim::dynamics
