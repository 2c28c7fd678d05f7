#include <benchmark/benchmark.h>

#include "qfdensity/harness.hpp"
#include "qfdensity/qf_sieve.hpp"

namespace {

void BM_RepCounts(benchmark::State& state) {
    const qfd::DiagonalForm form(13);
    const auto bound = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        auto table = qfd::rep_counts(bound, form);
        benchmark::DoNotOptimize(table);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_RepCounts)->RangeMultiplier(10)->Range(10000, 10000000)->Unit(benchmark::kMillisecond);

void BM_RepCountsSharded(benchmark::State& state) {
    const qfd::DiagonalForm form(13);
    qfd::SieveOptions options;
    options.shards = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        auto table = qfd::rep_counts(1000000, form, options);
        benchmark::DoNotOptimize(table);
    }
}
BENCHMARK(BM_RepCountsSharded)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_UnionCount(benchmark::State& state) {
    const auto forms = qfd::forms_for(qfd::primes_1mod4(static_cast<std::uint64_t>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(qfd::union_count(1000000, forms));
    state.counters["forms"] = static_cast<double>(forms.size());
}
BENCHMARK(BM_UnionCount)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_ProductSum(benchmark::State& state) {
    const qfd::DiagonalForm a(5), b(13);
    const auto bound = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(qfd::harness::product_sum(a, b, bound));
}
BENCHMARK(BM_ProductSum)->Arg(1000000)->Arg(10000000)->Unit(benchmark::kMillisecond);

}  // namespace
