// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include "refnet/kernels.hpp"
#include "refnet/random.hpp"

using namespace refnet;

namespace {

BinaryMatrix random_gbi(std::size_t events, std::size_t n) {
    Rng rng(1);
    BinaryMatrix m(events, n, 0);
    for (std::size_t e = 0; e < events; ++e)
        for (std::size_t i = 0; i < n; ++i) m(e, i) = bernoulli(rng, 0.1);
    return m;
}

RealMatrix random_weights(std::size_t n) {
    Rng rng(2);
    RealMatrix w(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (bernoulli(rng, 0.2)) w(i, j) = w(j, i) = 0.1 + std::uniform_real_distribution<double>()(rng);
    return w;
}

std::vector<Point> random_tracks(std::size_t n, std::size_t steps) {
    Rng rng(3);
    std::vector<Point> t(n * steps);
    for (auto& p : t) p = Point{static_cast<int>(uniform_index(rng, 6)), static_cast<int>(uniform_index(rng, 6))};
    return t;
}

void BM_cooccurrence_serial(benchmark::State& state) {
    const auto m = random_gbi(2000, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::cooccurrence(m));
}
void BM_cooccurrence_omp(benchmark::State& state) {
    const auto m = random_gbi(2000, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::omp::cooccurrence(m));
}
void BM_betweenness_serial(benchmark::State& state) {
    const auto w = random_weights(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::betweenness(w));
}
void BM_betweenness_omp(benchmark::State& state) {
    const auto w = random_weights(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::omp::betweenness(w));
}
void BM_colocation_serial(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto t = random_tracks(n, 100);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::colocation(t, 100));
}
void BM_colocation_omp(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto t = random_tracks(n, 100);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::omp::colocation(t, 100));
}

}  // namespace

BENCHMARK(BM_cooccurrence_serial)->Arg(100)->Arg(400);
BENCHMARK(BM_cooccurrence_omp)->Arg(100)->Arg(400);
BENCHMARK(BM_betweenness_serial)->Arg(100)->Arg(300);
BENCHMARK(BM_betweenness_omp)->Arg(100)->Arg(300);
BENCHMARK(BM_colocation_serial)->Arg(100)->Arg(320);
BENCHMARK(BM_colocation_omp)->Arg(100)->Arg(320);

BENCHMARK_MAIN();
