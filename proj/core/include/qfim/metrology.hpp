// metrology.hpp — optimal single-shot timing and Ramsey sequential estimation

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "qfim/errors.hpp"

namespace qfim::metrology {

// Single-shot optimum of the frequency QFI at theta = pi/2:
// tau* = 2/gamma, F_max = (4/gamma^2) e^{-2}.
struct SingleShotOptimum {
    double tau_star = 0.0;
    double f_max = 0.0;
};

// Throws ShieldedRegimeError for gamma <= 0 (QFI grows as tau^2 without bound).
SingleShotOptimum optimal_single_shot(double gamma);

// Sequential plan for a total probing time T split into n = T/tau shots.
struct RamseyPlan {
    double total_time = 0.0;
    double tau_star = 0.0;
    double n_star = 0.0;
    double delta_omega_min = 0.0;
    bool validity_warning = false;  // T*gamma < 10: T >> 1/gamma is marginal
};

// |Delta omega| >= 1 / sqrt(T tau e^{-gamma tau}); throws for tau > T.
double ramsey_uncertainty(double total_time, double tau, double gamma);

// tau* = 1/gamma, n* = T gamma, delta_omega_min = sqrt(e gamma / T).
// Requires T gamma >= 1; throws ShieldedRegimeError for gamma <= 0.
RamseyPlan optimal_ramsey(double total_time, double gamma);

struct MaximizeResult {
    double tau_star = 0.0;
    double f_max = 0.0;
    bool at_bracket_edge = false;
};

// Golden-section maximization of a unimodal curve on [tau_lo, tau_hi] to a
// relative tolerance on tau. The bracket shrinks geometrically; a maximum
// pinned at either end of the bracket is flagged, not treated as converged.
// Non-finite curve values throw std::runtime_error.
template <typename Curve>
MaximizeResult maximize_qfi_numeric(Curve&& curve, double tau_lo, double tau_hi,
                                    double rel_tol = 1e-8) {
    if (!(tau_lo < tau_hi) || !std::isfinite(tau_lo) || !std::isfinite(tau_hi)) {
        throw std::domain_error("maximize_qfi_numeric: invalid bracket");
    }
    if (!(rel_tol > 0.0) || !(rel_tol < 1.0)) {
        throw std::domain_error("maximize_qfi_numeric: rel_tol must lie in (0, 1)");
    }

    auto eval = [&curve](double t) {
        const double v = curve(t);
        if (!std::isfinite(v)) {
            throw std::runtime_error("maximize_qfi_numeric: curve produced a non-finite value");
        }
        return v;
    };

    constexpr double inv_phi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
    double lo = tau_lo;
    double hi = tau_hi;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = eval(x1);
    double f2 = eval(x2);

    const auto converged = [&] {
        return (hi - lo) <= rel_tol * std::max({std::abs(lo), std::abs(hi), 1e-300});
    };
    for (int iter = 0; iter < 10000 && !converged(); ++iter) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = eval(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = eval(x1);
        }
    }

    MaximizeResult result;
    result.tau_star = 0.5 * (lo + hi);
    result.f_max = std::max({eval(result.tau_star), f1, f2});
    const double edge_band = 8.0 * std::max(rel_tol * (tau_hi - tau_lo), hi - lo);
    result.at_bracket_edge =
        (result.tau_star >= tau_hi - edge_band) || (result.tau_star <= tau_lo + edge_band);
    return result;
}

} // namespace qfim::metrology
