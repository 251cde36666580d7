#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>

#include "opamech/config.hpp"
#include "opamech/linear_dynamics.hpp"
#include "opamech/polynomial.hpp"
#include "opamech/spectra.hpp"
#include "opamech/steady_state.hpp"

using namespace opamech;

namespace {

SystemParams strong_coupling() {
    SystemParams p = reference_params(1.3, 10.7);
    p.detuning.value =
        std::sqrt(p.omega_m * p.omega_m + 4.0 * p.parametric_gain * p.parametric_gain);
    return p;
}

void BM_SteadyStateClosedForm(benchmark::State& state) {
    const SystemParams p = reference_params(1.3, 6.9);
    const DerivedConstants d = derive_constants(p);
    for (auto _ : state)
        benchmark::DoNotOptimize(steady_state_at_delta(p, d, p.detuning.value));
}
BENCHMARK(BM_SteadyStateClosedForm);

void BM_SolveBranches(benchmark::State& state) {
    SystemParams p = reference_params(0.0, 10.7);
    p.detuning.mode = DetuningMode::Bare;
    const DerivedConstants d = derive_constants(p);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_branches(p, d, 1.2 * p.omega_m));
}
BENCHMARK(BM_SolveBranches);

void BM_RootsOfD(benchmark::State& state) {
    const SystemParams p = strong_coupling();
    const DerivedConstants d = derive_constants(p);
    const SteadyState ss = steady_state_at_delta(p, d, p.detuning.value);
    for (auto _ : state) benchmark::DoNotOptimize(roots_of_d(ss, d, p));
}
BENCHMARK(BM_RootsOfD);

void BM_RouthHurwitz(benchmark::State& state) {
    const SystemParams p = strong_coupling();
    const DerivedConstants d = derive_constants(p);
    const SteadyState ss = steady_state_at_delta(p, d, p.detuning.value);
    for (auto _ : state) benchmark::DoNotOptimize(routh_hurwitz(ss, d, p));
}
BENCHMARK(BM_RouthHurwitz);

void BM_SqSpectrumGrid(benchmark::State& state) {
    const SystemParams p = strong_coupling();
    const DerivedConstants d = derive_constants(p);
    const SteadyState ss = steady_state_at_delta(p, d, p.detuning.value);
    const auto grid = frequency_grid(p.omega_m, 0.2, 1.5, static_cast<int>(state.range(0)));
    const NoiseModel noise = NoiseModel::automatic(p);
    for (auto _ : state) benchmark::DoNotOptimize(sq_spectrum(ss, d, p, grid, noise));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SqSpectrumGrid)->Range(512, 8192)->Complexity(benchmark::oN);

void BM_OutputSpectraGrid(benchmark::State& state) {
    const SystemParams p = strong_coupling();
    const DerivedConstants d = derive_constants(p);
    const SteadyState ss = steady_state_at_delta(p, d, p.detuning.value);
    const auto grid = frequency_grid(p.omega_m, 0.2, 1.5, static_cast<int>(state.range(0)));
    const NoiseModel noise = NoiseModel::automatic(p);
    const SpectrumKind kinds[] = {SpectrumKind::Scout, SpectrumKind::Sxout, SpectrumKind::Syout};
    for (auto _ : state)
        benchmark::DoNotOptimize(output_spectra(ss, d, p, grid, noise, kinds));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_OutputSpectraGrid)->Range(512, 8192)->Complexity(benchmark::oN);

void BM_DurandKernerQuartic(benchmark::State& state) {
    const std::vector<std::complex<double>> coeffs = {
        {6.6e26, 0.0}, {0.0, -9.6e19}, {-5.1e13, 0.0}, {0.0, 2.8e6}, {1.0, 0.0}};
    for (auto _ : state) benchmark::DoNotOptimize(poly::durand_kerner(coeffs));
}
BENCHMARK(BM_DurandKernerQuartic);

void BM_CompanionQuintic(benchmark::State& state) {
    SystemParams p = reference_params(0.0, 10.7);
    p.detuning.mode = DetuningMode::Bare;
    const DerivedConstants d = derive_constants(p);
    const auto coeffs = branch_quintic_coefficients(p, d, 1.2 * p.omega_m);
    for (auto _ : state) benchmark::DoNotOptimize(poly::companion_roots(coeffs));
}
BENCHMARK(BM_CompanionQuintic);

} // namespace

BENCHMARK_MAIN();
