#include "locrad/concept_class.hpp"
#include "locrad/distribution.hpp"
#include "locrad/interval_deviation.hpp"
#include "locrad/rademacher.hpp"
#include "locrad/restriction.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace locrad;

namespace {

void BM_IntervalNoTarget(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto dist = DistributionSpec::uniform(1);
    const Sample s = draw_sample(dist, n, 1);
    const auto red = reduce_with_labels(ConceptClass::intervals(), std::vector<double>(n, 0.0), s);
    const auto draw = RademacherDraw::draw(n, 2);
    const LocalNormEvaluator norm(red, draw);
    double r = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(norm(r));
        r = r < 0.5 ? r * 1.1 : 0.01;
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IntervalNoTarget)->RangeMultiplier(2)->Range(1 << 10, 1 << 15)->Complexity();

void BM_IntervalTargetSetup(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto dist = DistributionSpec::uniform(1);
    const Sample s = draw_sample(dist, n, 1);
    const auto y = evaluate(Interval::closed(0.3, 0.7), s);
    const auto red = reduce_with_labels(ConceptClass::intervals(), y, s);
    const auto draw = RademacherDraw::draw(n, 2);
    for (auto _ : state) {
        const LocalNormEvaluator norm(red, draw);
        benchmark::DoNotOptimize(norm(0.1));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IntervalTargetSetup)->RangeMultiplier(2)->Range(256, 4096)->Complexity(benchmark::oNSquared);

void BM_ExplicitTable(benchmark::State& state) {
    const std::size_t n = 64, m = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 g(3);
    std::bernoulli_distribution coin(0.3);
    std::vector<std::vector<double>> vecs(m, std::vector<double>(n));
    for (auto& v : vecs) {
        for (auto& e : v) e = coin(g) ? 1.0 : 0.0;
    }
    const auto rest = SampledRestriction::from_vectors(n, vecs);
    const auto draw = RademacherDraw::draw(n, 4);
    for (auto _ : state) {
        const LocalNormEvaluator norm(rest, draw);
        benchmark::DoNotOptimize(norm(0.3));
    }
}
BENCHMARK(BM_ExplicitTable)->Range(64, 1 << 14);

void BM_TrueBallSup(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto dist = DistributionSpec::uniform(1);
    const Sample s = draw_sample(dist, n, 5);
    const auto scale = ProbabilityScale::map(s, Interval::closed(0.2, 0.6), dist);
    for (auto _ : state) {
        const EmpiricalDeviationSup dev(scale);
        benchmark::DoNotOptimize(dev(0.05));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TrueBallSup)->RangeMultiplier(4)->Range(256, 1 << 16)->Complexity(benchmark::oNLogN);

}  // namespace

BENCHMARK_MAIN();
