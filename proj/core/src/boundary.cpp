#include "qfim/boundary.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qfim::boundary {

namespace {

void require_positive(double u, const char* where) {
    if (!(u > 0.0) || !std::isfinite(u)) {
        std::ostringstream msg;
        msg << where << ": argument must be positive, got " << u;
        throw std::domain_error(msg.str());
    }
}

// Taylor expansions about u = 0 through u^12; truncation error at the switch
// point u = 0.5 is below 1e-16 (next term O(u^14)).
double f_parallel_series(double u) {
    const double u2 = u * u;
    return 1.0 +
           u2 * (-1.0 / 5.0 +
                 u2 * (3.0 / 280.0 +
                       u2 * (-1.0 / 3780.0 +
                             u2 * (1.0 / 266112.0 +
                                   u2 * (-1.0 / 28828800.0 + u2 * (1.0 / 4447872000.0))))));
}

double f_perp_series(double u) {
    const double u2 = u * u;
    return -1.0 +
           u2 * (1.0 / 10.0 +
                 u2 * (-1.0 / 280.0 +
                       u2 * (1.0 / 15120.0 +
                             u2 * (-1.0 / 1330560.0 +
                                   u2 * (1.0 / 172972800.0 + u2 * (-1.0 / 31135104000.0))))));
}

double df_parallel_series(double u) {
    const double u2 = u * u;
    return u * (-2.0 / 5.0 +
                u2 * (3.0 / 70.0 +
                      u2 * (-1.0 / 630.0 +
                            u2 * (1.0 / 33264.0 +
                                  u2 * (-1.0 / 2882880.0 + u2 * (1.0 / 370656000.0))))));
}

double df_perp_series(double u) {
    const double u2 = u * u;
    return u * (1.0 / 5.0 +
                u2 * (-1.0 / 70.0 +
                      u2 * (1.0 / 2520.0 +
                            u2 * (-1.0 / 166320.0 +
                                  u2 * (1.0 / 17297280.0 + u2 * (-1.0 / 2594592000.0))))));
}

double f_parallel_direct(double u) {
    return 1.5 * (u * std::cos(u) + (u * u - 1.0) * std::sin(u)) / (u * u * u);
}

double f_perp_direct(double u) {
    return 3.0 * (u * std::cos(u) - std::sin(u)) / (u * u * u);
}

double df_parallel_direct(double u) {
    const double u2 = u * u;
    return 1.5 * (u * (u2 - 3.0) * std::cos(u) + (3.0 - 2.0 * u2) * std::sin(u)) / (u2 * u2);
}

double df_perp_direct(double u) {
    const double u2 = u * u;
    return 3.0 * ((3.0 - u2) * std::sin(u) - 3.0 * u * std::cos(u)) / (u2 * u2);
}

} // namespace

double f_parallel(double u) {
    require_positive(u, "f_parallel");
    return u < kSeriesSwitch ? f_parallel_series(u) : f_parallel_direct(u);
}

double f_perp(double u) {
    require_positive(u, "f_perp");
    return u < kSeriesSwitch ? f_perp_series(u) : f_perp_direct(u);
}

double df_parallel_du(double u) {
    require_positive(u, "df_parallel_du");
    return u < kSeriesSwitch ? df_parallel_series(u) : df_parallel_direct(u);
}

double df_perp_du(double u) {
    require_positive(u, "df_perp_du");
    return u < kSeriesSwitch ? df_perp_series(u) : df_perp_direct(u);
}

ResponseEvaluation evaluate_response(double u) {
    require_positive(u, "evaluate_response");
    ResponseEvaluation out;
    out.u = u;
    if (u < kSeriesSwitch) {
        out.branch = Branch::series;
        out.f_parallel = f_parallel_series(u);
        out.f_perp = f_perp_series(u);
    } else {
        out.branch = Branch::direct;
        out.f_parallel = f_parallel_direct(u);
        out.f_perp = f_perp_direct(u);
    }
    return out;
}

double f_eff(const Polarization& alpha, double zeta, double lambda_ratio) {
    require_positive(zeta, "f_eff");
    require_positive(lambda_ratio, "f_eff (lambda_ratio)");
    const ResponseEvaluation r = evaluate_response(2.0 * lambda_ratio * zeta);
    return (alpha.alpha_x() + alpha.alpha_y()) * r.f_parallel + alpha.alpha_z() * r.f_perp;
}

double df_eff_du(const Polarization& alpha, double u) {
    require_positive(u, "df_eff_du");
    return (alpha.alpha_x() + alpha.alpha_y()) * df_parallel_du(u) +
           alpha.alpha_z() * df_perp_du(u);
}

double df_eff_domega0(const Polarization& alpha, double omega0, double zeta) {
    require_positive(omega0, "df_eff_domega0 (omega0)");
    require_positive(zeta, "df_eff_domega0 (zeta)");
    return df_eff_du(alpha, 2.0 * zeta) * (2.0 * zeta / omega0);
}

} // namespace qfim::boundary
