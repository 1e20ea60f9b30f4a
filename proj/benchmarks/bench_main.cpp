#include <benchmark/benchmark.h>

#include <random>

#include "bagins/individualize.hpp"
#include "bagins/priority.hpp"
#include "bagins/random_index.hpp"

namespace {

bagins::NumericPCM random_matrix(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<int> pick(-8, 8);
    std::vector<double> a(n * n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const int k = pick(gen);
            const double v = k >= 0 ? k + 1.0 : 1.0 / (1.0 - k);
            a[i * n + j] = v;
            a[j * n + i] = 1.0 / v;
        }
    }
    return bagins::NumericPCM(n, std::move(a));
}

bagins::LinguisticPCM random_pcm(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<int> grade(1, 9);
    bagins::LinguisticPCM pcm{"bench", n, bagins::default_item_names(n), {}};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            pcm.judgments.emplace_back(i, j, bagins::Grade(grade(gen)),
                                       gen() % 2 ? bagins::Direction::i_over_j : bagins::Direction::j_over_i);
    return pcm;
}

void BM_PowerIteration(benchmark::State& state) {
    const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(bagins::eigen_priority(m));
}
BENCHMARK(BM_PowerIteration)->DenseRange(3, 9, 3);

void BM_GeometricMean(benchmark::State& state) {
    const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(bagins::geomean_priority(m));
}
BENCHMARK(BM_GeometricMean)->DenseRange(3, 9, 3);

void BM_Individualize(benchmark::State& state) {
    const auto pcm = random_pcm(static_cast<std::size_t>(state.range(0)), 2);
    const bagins::IndividualizationConfig cfg;
    for (auto _ : state)
        benchmark::DoNotOptimize(bagins::individualize_scale(pcm, cfg, bagins::RandomIndexTable::builtin()));
}
BENCHMARK(BM_Individualize)->Arg(5)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_RandomIndex(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(bagins::derive_random_index(5, 20000, 42));
}
BENCHMARK(BM_RandomIndex)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
