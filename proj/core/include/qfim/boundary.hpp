// boundary.hpp — vacuum response modification near a perfectly reflecting plane
//
// The spectral response of the vacuum at the transition frequency is modified
// by the factor 1 - f, where f mixes a parallel and a perpendicular response
// function of the single dimensionless argument u = 2 lambda z0 / c:
//
//   f_parallel(u) = (3 / (2 u^3)) [ u cos u + (u^2 - 1) sin u ]   (dipole in-plane)
//   f_perp(u)     = (3 / u^3)     [ u cos u - sin u ]             (dipole normal)
//
// Direct evaluation amplifies cancellation by u^-3 for small u; below
// kSeriesSwitch both functions (and their u-derivatives) are evaluated from
// Taylor series whose truncation error is < 1e-15 at the switch point.

#pragma once

#include "qfim/atom.hpp"

namespace qfim::boundary {

// Series/direct switch threshold u0.
inline constexpr double kSeriesSwitch = 0.5;

enum class Branch { series, direct };

struct ResponseEvaluation {
    double u = 0.0;
    double f_parallel = 0.0;
    double f_perp = 0.0;
    Branch branch = Branch::direct;
};

// Response for a dipole parallel to the boundary; -> 1 as u -> 0, -> 0 as
// u -> infinity. Throws std::domain_error for u <= 0.
double f_parallel(double u);

// Response for a dipole normal to the boundary; -> -1 as u -> 0.
double f_perp(double u);

// Closed-form u-derivatives of the response functions.
double df_parallel_du(double u);
double df_perp_du(double u);

// Both responses at once, tagged with the evaluation branch used.
ResponseEvaluation evaluate_response(double u);

// f = alpha_x f_par + alpha_y f_par + alpha_z f_perp at u = 2 lambda_ratio zeta,
// with lambda_ratio = lambda/omega0 (the physics evaluates at lambda = omega0).
double f_eff(const Polarization& alpha, double zeta, double lambda_ratio = 1.0);

// d f_eff / du at the given argument.
double df_eff_du(const Polarization& alpha, double u);

// d f_eff / d omega0 at fixed z0, in units of 1/[omega0]; u = 2 zeta scales
// linearly with omega0, so this is f'(2 zeta) * 2 zeta / omega0.
double df_eff_domega0(const Polarization& alpha, double omega0, double zeta);

} // namespace qfim::boundary
