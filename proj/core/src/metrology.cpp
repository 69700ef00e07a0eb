#include "qfim/metrology.hpp"

#include <cmath>
#include <numbers>

namespace qfim::metrology {

SingleShotOptimum optimal_single_shot(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw ShieldedRegimeError(
            "optimal_single_shot: gamma <= 0, QFI grows as tau^2 with no finite optimum");
    }
    SingleShotOptimum opt;
    opt.tau_star = 2.0 / gamma;
    opt.f_max = opt.tau_star * opt.tau_star * std::exp(-2.0);
    return opt;
}

double ramsey_uncertainty(double total_time, double tau, double gamma) {
    if (!(total_time > 0.0) || !std::isfinite(total_time)) {
        throw std::domain_error("ramsey_uncertainty: total time must be positive");
    }
    if (!(tau > 0.0) || !(tau <= total_time)) {
        throw std::domain_error("ramsey_uncertainty: tau must lie in (0, T]");
    }
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        throw std::domain_error("ramsey_uncertainty: gamma must be nonnegative");
    }
    return 1.0 / std::sqrt(total_time * tau * std::exp(-gamma * tau));
}

RamseyPlan optimal_ramsey(double total_time, double gamma) {
    if (!(total_time > 0.0) || !std::isfinite(total_time)) {
        throw std::domain_error("optimal_ramsey: total time must be positive");
    }
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw ShieldedRegimeError(
            "optimal_ramsey: gamma <= 0, use a single uninterrupted probe of length T");
    }
    if (!(total_time * gamma >= 1.0)) {
        throw std::domain_error("optimal_ramsey: requires T >= 1/gamma");
    }
    RamseyPlan plan;
    plan.total_time = total_time;
    plan.tau_star = 1.0 / gamma;
    plan.n_star = total_time * gamma;
    plan.delta_omega_min = std::sqrt(std::numbers::e * gamma / total_time);
    plan.validity_warning = total_time * gamma < 10.0;
    return plan;
}

} // namespace qfim::metrology
