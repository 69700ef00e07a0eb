// dynamics.hpp — dissipator coefficients and Bloch-vector evolution
//
// The reduced dynamics is a Kossakowski-Lindblad semigroup. In Bloch form:
//
//   dw1/dt = -Omega w2 - 2 A w1
//   dw2/dt =  Omega w1 - 2 A w2
//   dw3/dt = -4 A w3 - 4 B
//
// For a vacuum bath A = B = gamma/4 with gamma = gamma0 (1 - f) the effective
// decay rate, and the closed-form propagator is available for any initial
// state. An adaptive Runge-Kutta integration of the same generator serves as
// an independent oracle for the closed form.

#pragma once

#include <span>
#include <vector>

#include "qfim/atom.hpp"
#include "qfim/bloch.hpp"
#include "qfim/errors.hpp"

namespace qfim::dynamics {

// Kossakowski scalars of the two-level dissipator plus the effective level
// spacing. The vacuum structure forces a == b; the ratio b/a is stored as the
// exact value 1 so that the fully shielded case (a = 0) evolves w3 without a
// 0/0.
struct DissipatorCoefficients {
    double a = 0.0;             // transverse relaxation scalar, gamma/4
    double b = 0.0;             // longitudinal drift scalar; equals a in vacuum
    double omega = 0.0;         // effective level spacing (renormalized omega0)
    double ratio_b_over_a = 1.0;

    // gamma = gamma0 (1 - f) = 4 A.
    double decay_rate() const noexcept { return 4.0 * a; }
};

struct EvolutionRecord {
    double gamma0_tau = 0.0;
    BlochVector bloch;
    double purity = 0.0;        // |w|
};

// A = B = (gamma0/4)(1 - f_eff) near the boundary, gamma0/4 in free space;
// Omega = omega0 (the Lamb shift is absorbed into the renormalized frequency).
DissipatorCoefficients kossakowski_coefficients(const AtomSpec& atom, const Environment& env);

// gamma = gamma0 (1 - f); equals kossakowski_coefficients(...).decay_rate().
double effective_decay_rate(const AtomSpec& atom, const Environment& env);

// d gamma / d omega0 at fixed z0 and fixed dipole matrix element
// (d gamma0 / d omega0 = 3 gamma0 / omega0).
double decay_rate_domega0(const AtomSpec& atom, const Environment& env);

// Closed-form propagation: transverse components rotate by Omega tau and
// shrink by e^{-2 A tau}; w3(tau) = w3(0) e^{-4 A tau} - (b/a)(1 - e^{-4 A tau}).
BlochVector propagate_bloch(const BlochVector& initial, const DissipatorCoefficients& coeffs,
                            double tau);

// Generator of the semigroup evaluated at w.
BlochVector lindblad_rhs(const BlochVector& w, const DissipatorCoefficients& coeffs);

// Adaptive embedded Runge-Kutta integration of lindblad_rhs over [0, tau]
// with local error control. Tolerances must lie in (0, 1e-3]. Throws
// IntegrationError (carrying the reached time) on step-size underflow.
BlochVector integrate_master_equation(const BlochVector& initial,
                                      const DissipatorCoefficients& coeffs, double tau,
                                      double rel_tol, double abs_tol);

// (0, 0, -b/a); throws NoSteadyStateError when a = 0.
BlochVector steady_state(const DissipatorCoefficients& coeffs);

// Closed-form trajectory of the atom's initial state on a gamma0*tau grid.
std::vector<EvolutionRecord> evolve_trajectory(const AtomSpec& atom, const Environment& env,
                                               std::span<const double> gamma0_tau_grid);

} // namespace qfim::dynamics
