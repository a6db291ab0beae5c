#include <benchmark/benchmark.h>

#include "stiknn/datagen.hpp"
#include "stiknn/oracle.hpp"
#include "stiknn/sti_knn.hpp"
#include "stiknn/valuation.hpp"

using namespace stiknn;

namespace {

Dataset circle_train(int n) { return make_circles(n / 2, 0.5, 0.1, 7); }
Dataset circle_test(int t) {
    return make_circles(t / 2, 0.5, 0.1, 8).with_role(DatasetRole::Test);
}

void BM_RankNeighbors(benchmark::State& state) {
    const Dataset train = circle_train(static_cast<int>(state.range(0)));
    const Dataset test = circle_test(2);
    for (auto _ : state) {
        NeighborRanking r = rank_neighbors(train, test.point(0));
        benchmark::DoNotOptimize(r.order.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RankNeighbors)->RangeMultiplier(2)->Range(256, 4096)->Complexity();

void BM_StiKnnOverN(benchmark::State& state) {
    const Dataset train = circle_train(static_cast<int>(state.range(0)));
    const Dataset test = circle_test(50);
    const KnnConfig cfg{5, Metric::Euclidean};
    for (auto _ : state) {
        InteractionMatrix m = sti_knn(train, test, cfg);
        benchmark::DoNotOptimize(m.values.flat().data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StiKnnOverN)->RangeMultiplier(2)->Range(250, 2000)->Complexity();

void BM_StiKnnOverT(benchmark::State& state) {
    const Dataset train = circle_train(500);
    const Dataset test = circle_test(static_cast<int>(state.range(0)));
    const KnnConfig cfg{5, Metric::Euclidean};
    for (auto _ : state) {
        InteractionMatrix m = sti_knn(train, test, cfg);
        benchmark::DoNotOptimize(m.values.flat().data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StiKnnOverT)->RangeMultiplier(2)->Range(50, 400)->Complexity();

void BM_StiKnnThreads(benchmark::State& state) {
    const Dataset train = circle_train(1000);
    const Dataset test = circle_test(128);
    const KnnConfig cfg{5, Metric::Euclidean};
    for (auto _ : state) {
        InteractionMatrix m = sti_knn(train, test, cfg, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(m.values.flat().data());
    }
}
BENCHMARK(BM_StiKnnThreads)->Arg(1)->Arg(2)->Arg(4);

void BM_OracleMatrix(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Dataset train = circle_train(n);
    const Dataset test = circle_test(2);
    const KnnConfig cfg{3, Metric::Euclidean};
    for (auto _ : state) {
        InteractionMatrix m = sti_exact_matrix(train, test, cfg);
        benchmark::DoNotOptimize(m.values.flat().data());
    }
}
BENCHMARK(BM_OracleMatrix)->DenseRange(8, 14, 2);

}  // namespace

BENCHMARK_MAIN();
