#include <benchmark/benchmark.h>

#include "dedelab/dedekind.hpp"
#include "dedelab/moments.hpp"
#include "dedelab/oracle.hpp"
#include "dedelab/scan.hpp"

using namespace dedelab;

namespace {

void BM_dedekind_fast(benchmark::State& state) {
    const long p = state.range(0);
    long h = 2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dedekind_fast(h, p));
        h = h % (p - 2) + 2;
    }
}
BENCHMARK(BM_dedekind_fast)->Arg(99991)->Arg(2147483647)->Arg(2305843009213693951L);

void BM_dedekind_naive(benchmark::State& state) {
    const long p = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(dedekind_naive(2, p));
}
BENCHMARK(BM_dedekind_naive)->Arg(9973)->Arg(99991)->Arg(999983);

void BM_mean_square_lift(benchmark::State& state) {
    Subgroup H = subgroup_of_order(127, 7);
    for (auto _ : state) benchmark::DoNotOptimize(mean_square_d0_lift(127, H, state.range(0)));
}
BENCHMARK(BM_mean_square_lift)->Arg(15)->Arg(105);

void BM_l1_cotangent(benchmark::State& state) {
    auto chars = characters_trivial_on(499, trivial_subgroup(499), Parity::odd);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle::l1_cotangent(chars[i % chars.size()]));
        ++i;
    }
}
BENCHMARK(BM_l1_cotangent);

void BM_scan_block(benchmark::State& state) {
    for (auto _ : state) {
        ScanOptions opts;
        opts.max_p = state.range(0);
        opts.threads = 1;
        opts.verify_rate = 0;
        benchmark::DoNotOptimize(run_scan(opts, [](const ScanRecord&) {}));
    }
}
BENCHMARK(BM_scan_block)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
