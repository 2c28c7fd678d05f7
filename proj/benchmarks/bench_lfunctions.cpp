#include <benchmark/benchmark.h>

#include "qfdensity/lfunctions.hpp"

namespace {

void BM_LValue(benchmark::State& state) {
    const qfd::ProductCharacter chi({-20, -52});
    const int s = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(qfd::l_value(chi, s, 1e-10));
}
BENCHMARK(BM_LValue)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_MainTerm(benchmark::State& state) {
    const qfd::DiagonalForm a(5), b(13);
    for (auto _ : state) benchmark::DoNotOptimize(qfd::main_term(a, b, 1e6, 1e-10));
}
BENCHMARK(BM_MainTerm)->Unit(benchmark::kMillisecond);

}  // namespace
