#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "qfim/boundary.hpp"
#include "qfim/dynamics.hpp"
#include "qfim/metrology.hpp"
#include "qfim/qfi.hpp"

using namespace qfim;

static void BM_ResponseSeries(benchmark::State& state) {
    double u = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(boundary::f_parallel(u));
        u = u < 0.49 ? u + 1e-4 : 0.01;
    }
}
BENCHMARK(BM_ResponseSeries);

static void BM_ResponseDirect(benchmark::State& state) {
    double u = 0.6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(boundary::f_parallel(u));
        u = u < 50.0 ? u + 1e-3 : 0.6;
    }
}
BENCHMARK(BM_ResponseDirect);

static void BM_FEff(benchmark::State& state) {
    const Polarization alpha(0.2, 0.3, 0.5);
    double zeta = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(boundary::f_eff(alpha, zeta));
        zeta = zeta < 10.0 ? zeta + 1e-3 : 0.1;
    }
}
BENCHMARK(BM_FEff);

static void BM_PropagateBloch(benchmark::State& state) {
    const dynamics::DissipatorCoefficients coeffs{0.25, 0.25, 100.0, 1.0};
    const BlochVector w0 = bloch_from_angles(1.1, 0.4);
    double tau = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dynamics::propagate_bloch(w0, coeffs, tau));
        tau = tau < 10.0 ? tau + 1e-3 : 0.0;
    }
}
BENCHMARK(BM_PropagateBloch);

static void BM_IntegrateMasterEquation(benchmark::State& state) {
    const dynamics::DissipatorCoefficients coeffs{0.25, 0.25, 100.0, 1.0};
    const BlochVector w0 = bloch_from_angles(1.1, 0.4);
    const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            dynamics::integrate_master_equation(w0, coeffs, 5.0, tol, tol * 0.1));
    }
}
BENCHMARK(BM_IntegrateMasterEquation)->Arg(6)->Arg(8)->Arg(10);

static void BM_QfiBloch(benchmark::State& state) {
    const BlochVector w{0.3, -0.2, 0.5};
    const BlochVector dw{0.1, 0.7, -0.2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(qfi::qfi_bloch(w, dw));
    }
}
BENCHMARK(BM_QfiBloch);

static void BM_QfiSpectral(benchmark::State& state) {
    const DensityMatrix2 rho = density_from_bloch({0.3, -0.2, 0.5});
    Eigen::Matrix2cd drho;
    drho << std::complex<double>(0.25, 0.0), std::complex<double>(0.05, -0.35),
        std::complex<double>(0.05, 0.35), std::complex<double>(-0.25, 0.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qfi::qfi_spectral(rho, drho));
    }
}
BENCHMARK(BM_QfiSpectral);

static void BM_FrequencyQfiExact(benchmark::State& state) {
    const AtomSpec atom(1e6, 1.0, std::numbers::pi / 2.0, 0.0);
    const Environment env = Boundary{0.8, Polarization::isotropic()};
    double tau = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(qfi::qfi_frequency_exact(atom, env, tau));
        tau = tau < 8.0 ? tau + 1e-3 : 0.1;
    }
}
BENCHMARK(BM_FrequencyQfiExact);

static void BM_GoldenSectionOptimum(benchmark::State& state) {
    for (auto _ : state) {
        auto r = metrology::maximize_qfi_numeric(
            [](double t) { return std::exp(-t) * t * t; }, 1e-3, 20.0, 1e-8);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_GoldenSectionOptimum);

BENCHMARK_MAIN();
