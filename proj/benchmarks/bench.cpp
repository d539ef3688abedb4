#include <benchmark/benchmark.h>

#include "realocus/periods.hpp"

using namespace realocus;

static void BM_n_cycle_13(benchmark::State& st)
{
    for (auto _ : st)
        benchmark::DoNotOptimize(n_cycle(13, Form{-13, 108, -213}));
}
BENCHMARK(BM_n_cycle_13);

static void BM_class_number(benchmark::State& st)
{
    long D = st.range(0);
    for (auto _ : st)
        benchmark::DoNotOptimize(class_number(D));
}
BENCHMARK(BM_class_number)->Arg(4 * 163)->Arg(4 * 1009)->Arg(4 * 10007);

static void BM_components(benchmark::State& st)
{
    long N = st.range(0);
    for (auto _ : st)
        benchmark::DoNotOptimize(components(N));
}
BENCHMARK(BM_components)->Arg(37)->Arg(163)->Arg(997);

static void BM_manin_basis(benchmark::State& st)
{
    long N = st.range(0);
    for (auto _ : st)
        benchmark::DoNotOptimize(ManinBasis(N).dimension());
}
BENCHMARK(BM_manin_basis)->Arg(37)->Arg(163)->Arg(389);

// components of 5..101 against the quotient, as in the rank table
static void BM_rank_sweep(benchmark::State& st)
{
    for (auto _ : st)
        for (long N = 5; N <= 101; ++N)
            if (is_prime(N))
                benchmark::DoNotOptimize(component_rank(N));
}
BENCHMARK(BM_rank_sweep)->Unit(benchmark::kMillisecond);

static void BM_alpha_163(benchmark::State& st)
{
    auto curves = load_curves(REALOCUS_BENCH_CURVES);
    Newform f(find_curve(curves, "163A1"));
    auto comps = components(163);
    for (auto _ : st)
        benchmark::DoNotOptimize(alpha(f, comps[0]));
}
BENCHMARK(BM_alpha_163);

static void BM_real_period(benchmark::State& st)
{
    auto curves = load_curves(REALOCUS_BENCH_CURVES);
    const Curve& e = find_curve(curves, "79A1");
    for (auto _ : st)
        benchmark::DoNotOptimize(real_period(e));
}
BENCHMARK(BM_real_period);

BENCHMARK_MAIN();
