#include <benchmark/benchmark.h>

#include "qfdensity/class_group.hpp"
#include "qfdensity/genus_series.hpp"

namespace {

void BM_GenusCoeffs(benchmark::State& state) {
    const qfd::DiagonalForm form(21);
    const auto pair = qfd::genus_pairs(form).front();
    const auto length = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(qfd::genus_coeffs(form, pair, length));
}
BENCHMARK(BM_GenusCoeffs)->RangeMultiplier(10)->Range(1000, 100000)->Unit(benchmark::kMicrosecond);

void BM_DirichletConvolve(benchmark::State& state) {
    const auto length = static_cast<std::size_t>(state.range(0));
    const std::int64_t f[] = {-4}, g[] = {13};
    const auto a = qfd::character_series(f, length);
    const auto b = qfd::character_series(g, length);
    for (auto _ : state) benchmark::DoNotOptimize(qfd::dirichlet_convolve(a, b));
}
BENCHMARK(BM_DirichletConvolve)->RangeMultiplier(10)->Range(1000, 100000)->Unit(benchmark::kMicrosecond);

void BM_FactorizationCheck(benchmark::State& state) {
    const qfd::DiagonalForm z5(5), z13(13);
    const auto p1 = qfd::genus_pairs(z5).back();
    const auto p2 = qfd::genus_pairs(z13).back();
    for (auto _ : state) benchmark::DoNotOptimize(qfd::factorization_check(z5, z13, p1, p2, 5000));
}
BENCHMARK(BM_FactorizationCheck)->Unit(benchmark::kMillisecond);

void BM_ReducedForms(benchmark::State& state) {
    const auto disc = -4 * state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(qfd::reduced_forms(disc));
}
BENCHMARK(BM_ReducedForms)->Arg(1005)->Arg(100005)->Unit(benchmark::kMicrosecond);

}  // namespace
