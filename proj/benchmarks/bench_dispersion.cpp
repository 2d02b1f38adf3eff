#include <benchmark/benchmark.h>

#include "vacbrown/dispersion.hpp"
#include "vacbrown/kernels.hpp"
#include "vacbrown/sweep.hpp"

using namespace vacbrown;

namespace {

void BM_Kernel(benchmark::State& state) {
    const double chi = static_cast<double>(state.range(0));
    const Scenario s = Scenario::reduced(3.0, chi);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::kernel(Axis::z, s, {3.0, 0.0}).value);
    }
}
BENCHMARK(BM_Kernel)->Arg(1)->Arg(100)->Arg(10000);

void BM_Dispersion(benchmark::State& state, MethodChoice method, Axis axis, double tau, double chi) {
    const Scenario s = Scenario::reduced(tau, chi);
    for (auto _ : state) {
        benchmark::DoNotOptimize(velocity_dispersion(axis, s, method).rho);
    }
}
BENCHMARK_CAPTURE(BM_Dispersion, spectral_small_chi, MethodChoice::spectral_window, Axis::z, 1.0, 1e-3);
BENCHMARK_CAPTURE(BM_Dispersion, spectral_unit_chi, MethodChoice::spectral_window, Axis::x, 1.5, 1.0);
BENCHMARK_CAPTURE(BM_Dispersion, kernel_unit_chi, MethodChoice::kernel_time_domain, Axis::z, 4.0, 1.0);
BENCHMARK_CAPTURE(BM_Dispersion, kernel_large_chi, MethodChoice::kernel_time_domain, Axis::z, 100.0, 1e6);
BENCHMARK_CAPTURE(BM_Dispersion, kernel_small_chi, MethodChoice::kernel_time_domain, Axis::x, 10.0, 1e-3);

void BM_Sweep(benchmark::State& state) {
    SweepSpec spec;
    spec.axes = {Axis::z, Axis::x};
    spec.chi_grid = {1e-3, 1e-1, 1.0, 10.0, 1e3};
    spec.tau_grid = {0.5, 1.0, 3.0, 10.0, 50.0};
    spec.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(dispersion_sweep(spec).rows.size());
    }
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
