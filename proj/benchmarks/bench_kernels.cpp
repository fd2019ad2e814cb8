#include <benchmark/benchmark.h>

#include "latchaos/lattice/adiabatic.hpp"
#include "latchaos/quantum/propagate.hpp"
#include "latchaos/semiclassical/ehrenfest.hpp"

#include <cmath>
#include <numbers>

using namespace latchaos;

namespace {

const auto params = lattice::SystemParams::reference(0.25 * std::numbers::pi);

void BM_SplitStep(benchmark::State& state)
{
    const quantum::SpatialGrid grid(static_cast<std::size_t>(state.range(0)), 8);
    auto psi = quantum::init_gaussian({}, grid);
    quantum::SplitOperator op(grid, params, 2e-6);
    for (auto _ : state) {
        op.advance(psi, 1);
        benchmark::DoNotOptimize(psi.data().data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SplitStep)->RangeMultiplier(2)->Range(1024, 8192)->Unit(benchmark::kMicrosecond);

void BM_Measure(benchmark::State& state)
{
    const auto grid = quantum::SpatialGrid::reference();
    const auto psi = quantum::init_gaussian({}, grid);
    quantum::SplitOperator op(grid, params, 2e-6);
    for (auto _ : state)
        benchmark::DoNotOptimize(op.measure(psi));
}
BENCHMARK(BM_Measure)->Unit(benchmark::kMicrosecond);

void BM_EhrenfestRhs(benchmark::State& state)
{
    auto y = semiclassical::pack({0.1, 25.0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(semiclassical::ehrenfest_rhs_packed(y, params));
        y[0] += 1e-9; // keep the call from being hoisted
    }
}
BENCHMARK(BM_EhrenfestRhs);

void BM_EhrenfestIntegrate(benchmark::State& state)
{
    const semiclassical::Tolerance tol = semiclassical::Tolerance::from_relative(std::pow(10.0, -state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(semiclassical::integrate({0.0, 25.0}, params, 0.05, tol));
}
BENCHMARK(BM_EhrenfestIntegrate)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_AdiabaticFrame(benchmark::State& state)
{
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lattice::adiabatic_frame(params, x));
        x += 1e-4;
    }
}
BENCHMARK(BM_AdiabaticFrame);

void BM_CouplingTerms(benchmark::State& state)
{
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lattice::coupling_terms(params, x, 25.0));
        x += 1e-4;
    }
}
BENCHMARK(BM_CouplingTerms);

} // namespace

// the packaged benchmark_main archive carries LTO bytecode from another compiler release
BENCHMARK_MAIN();
