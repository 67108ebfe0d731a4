#include <benchmark/benchmark.h>

#include <cmath>

#include "brinkman/analysis.hpp"

using namespace brinkman;

namespace {

MonolithicSystem layered_system(int n, double anna) {
    const StaggeredGrid grid(n, n);
    const auto field = generate_contrast_field(grid, 1e5, 1e5, FieldPattern::Layered, 0);
    return assemble_monolithic(grid, normalize(field), anna, uniform_boundary(grid, 1.0, 0.0));
}

void BM_Assemble(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const StaggeredGrid grid(n, n);
    const auto kstar = normalize(generate_contrast_field(grid, 1e5, 1e5, FieldPattern::Layered, 0));
    const auto bc = uniform_boundary(grid, 1.0, 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(assemble_monolithic(grid, kstar, 1.0, bc));
}
BENCHMARK(BM_Assemble)->Arg(20)->Arg(40)->Arg(80);

void BM_Matvec(benchmark::State& state) {
    const auto sys = layered_system(static_cast<int>(state.range(0)), 1.0);
    std::vector<double> y(sys.rhs.size());
    for (auto _ : state) {
        sys.matrix.multiply(sys.rhs, y);
        benchmark::DoNotOptimize(y.data());
    }
}
BENCHMARK(BM_Matvec)->Arg(20)->Arg(40)->Arg(80);

void BM_Gmres(benchmark::State& state) {
    const auto sys = layered_system(20, std::pow(10.0, static_cast<double>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(gmres_solve(sys.matrix, sys.rhs));
}
BENCHMARK(BM_Gmres)->Arg(-3)->Arg(0)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_DirectPinned(benchmark::State& state) {
    const StaggeredGrid grid(20, 20);
    const auto kstar = normalize(generate_contrast_field(grid, 1e5, 1e5, FieldPattern::Layered, 0));
    const auto sys = assemble_monolithic(grid, kstar, 1.0, uniform_boundary(grid, 1.0, 0.0), AssemblyOptions{true, true});
    for (auto _ : state) benchmark::DoNotOptimize(direct_solve(sys.matrix, sys.rhs));
}
BENCHMARK(BM_DirectPinned)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
