#include "nccc/coherent.hpp"
#include "nccc/regions.hpp"
#include "nccc/verifier.hpp"

#include <benchmark/benchmark.h>

using namespace nccc;

namespace {

// the literal p_* C_{Z_1} on the P3 blow-up complex against the negated skeleton
struct SSInput {
    BlowupContext ctx = standard_context("P3");
    CellularSheaf sheaf = literal_object(context_complex(ctx), ctx, 1);
    Fan fan = ctx.in_basis(ctx.blown_up);
};

const SSInput& ss_input()
{
    static SSInput in;
    return in;
}

void BM_ss_scan_serial(benchmark::State& st)
{
    const auto& in = ss_input();
    for (auto _ : st)
        benchmark::DoNotOptimize(ss_contained_in_skeleton_serial(in.sheaf, in.fan, true));
}

void BM_ss_scan_parallel(benchmark::State& st)
{
    const auto& in = ss_input();
    for (auto _ : st)
        benchmark::DoNotOptimize(ss_contained_in_skeleton(in.sheaf, in.fan, true));
}

void BM_cech_cells_serial(benchmark::State& st)
{
    auto ctx = standard_context("P3");
    auto cs = build_cech_system(ctx);
    for (auto _ : st)
        benchmark::DoNotOptimize(check_cech_cells_serial(ctx, cs, -4, 1));
}

void BM_cech_cells_parallel(benchmark::State& st)
{
    auto ctx = standard_context("P3");
    auto cs = build_cech_system(ctx);
    for (auto _ : st)
        benchmark::DoNotOptimize(check_cech_cells(ctx, cs, -4, 1));
}

const ToricDivisor blp3_divisor{3, -2, 1, 2, -4};

void BM_line_bundle_serial(benchmark::State& st)
{
    Fan f = standard_context("P3").blown_up;
    for (auto _ : st)
        benchmark::DoNotOptimize(line_bundle_cohomology_serial(f, blp3_divisor));
}

void BM_line_bundle_parallel(benchmark::State& st)
{
    Fan f = standard_context("P3").blown_up;
    for (auto _ : st)
        benchmark::DoNotOptimize(line_bundle_cohomology(f, blp3_divisor));
}

}  // namespace

BENCHMARK(BM_ss_scan_serial)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_ss_scan_parallel)->Unit(benchmark::kMillisecond)->Iterations(1)->UseRealTime();
BENCHMARK(BM_cech_cells_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cech_cells_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_line_bundle_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_line_bundle_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
