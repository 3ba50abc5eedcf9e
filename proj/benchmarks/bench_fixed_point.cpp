#include "locrad/entropy.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace locrad;

namespace {

void BM_BracketingPower(benchmark::State& state) {
    const auto curve = EntropyCurve::power(1.0, static_cast<double>(state.range(0)) / 10.0);
    for (auto _ : state) benchmark::DoNotOptimize(bracketing_fixed_point(curve, 1e5).delta);
}
BENCHMARK(BM_BracketingPower)->Arg(5)->Arg(10)->Arg(15);

void BM_RandomVc(benchmark::State& state) {
    const auto curve = EntropyCurve::vc(std::log(1000.0));
    for (auto _ : state) benchmark::DoNotOptimize(random_fixed_point(curve, 1e4, 12.0).delta);
}
BENCHMARK(BM_RandomVc);

void BM_InclusionBalance(benchmark::State& state) {
    const auto curve = EntropyCurve::power(1.0, 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(inclusion_fixed_point(curve, 1e6).delta);
}
BENCHMARK(BM_InclusionBalance);

void BM_TabulatedIntegral(benchmark::State& state) {
    std::vector<double> u, h;
    for (int i = 1; i <= state.range(0); ++i) {
        u.push_back(i / static_cast<double>(state.range(0)));
        h.push_back(std::log(1.0 + state.range(0) / static_cast<double>(i)));
    }
    const auto curve = EntropyCurve::tabulated(u, h);
    for (auto _ : state) benchmark::DoNotOptimize(entropy_integral(curve, 0.7, IntegralVariant::bracketing));
}
BENCHMARK(BM_TabulatedIntegral)->Range(8, 4096);

}  // namespace

BENCHMARK_MAIN();
