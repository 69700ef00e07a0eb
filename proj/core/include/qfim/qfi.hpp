// qfi.hpp — quantum Fisher information engines and closed-form decay laws
//
// Three independent routes to the same quantity:
//   * closed form:   F_theta = e^{-gamma tau}, F_phi = sin^2(theta) e^{-gamma tau}
//   * Bloch form:    F_X = |dw|^2 + (w . dw)^2 / (1 - |w|^2)   (|dw|^2 when pure)
//   * spectral form: F_X = 2 sum_{m,n} |<m|dX rho|n>|^2 / (p_m + p_n)
// plus the frequency QFI, exact within the model and as a first-order
// approximation in the decay sensitivity.

#pragma once

#include <Eigen/Core>

#include <span>
#include <vector>

#include "qfim/atom.hpp"
#include "qfim/bloch.hpp"
#include "qfim/dynamics.hpp"

namespace qfim::qfi {

enum class ParameterTag { theta, phi, omega0 };
enum class Method { closed_form, bloch_form, spectral_form };

struct QfiSample {
    double gamma0_tau = 0.0;
    double value = 0.0;
    Method method = Method::closed_form;
};

// 1 - |w|^2 below this is treated as pure (the mixed-branch second term is
// 0/0 there and vanishes identically along physical families).
inline constexpr double kPureEpsilon = 1e-9;

// Eigenvalue-sum cutoff of the spectral sum; removable singularity.
inline constexpr double kEigenvalueCutoff = 1e-12;

// Bloch-form QFI. Throws PhysicalityError for |w| > 1 + 1e-9 and
// InconsistentDerivativeError when a pure state has |w . dw| > sqrt(kPureEpsilon).
double qfi_bloch(const BlochVector& w, const BlochVector& dw);

// Spectral-form QFI; drho must be Hermitian (throws std::invalid_argument).
double qfi_spectral(const DensityMatrix2& rho, const Eigen::Matrix2cd& drho);

// Analytic derivative of the evolved Bloch vector with respect to theta, phi
// or omega0. The omega0 derivative includes the phase sensitivity
// (dOmega/domega0 = 1) and the decay sensitivity through
// gamma(omega0) = gamma0(omega0) (1 - f(2 zeta(omega0))).
BlochVector parameter_derivative(ParameterTag param, const AtomSpec& atom,
                                 const Environment& env, double tau);

double qfi_theta_closed(const AtomSpec& atom, const Environment& env, double tau);
double qfi_phi_closed(const AtomSpec& atom, const Environment& env, double tau);

// Frequency QFI via the Bloch engine with analytic derivatives; exact within
// the model (no expansion in gamma0/omega0).
double qfi_frequency_exact(const AtomSpec& atom, const Environment& env, double tau);

// First-order frequency QFI:
//   sin^2(theta) e^{-gamma tau} tau^2
//   + 16 (dgamma/domega0)^2 [1 + sin^2(theta)/4 + cos(theta)(cos(theta)+2) e^{-gamma tau}]
//     e^{-gamma tau} tau^2
double qfi_frequency_approx(const AtomSpec& atom, const Environment& env, double tau);

// One method evaluated at every sample tau; a single point per grid entry.
// closed_form for omega0 is the first-order expression above.
double qfi_value(ParameterTag param, Method method, const AtomSpec& atom,
                 const Environment& env, double tau);

std::vector<QfiSample> qfi_curve(ParameterTag param, Method method, const AtomSpec& atom,
                                 const Environment& env,
                                 std::span<const double> gamma0_tau_grid);

} // namespace qfim::qfi
