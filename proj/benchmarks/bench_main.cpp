#include <benchmark/benchmark.h>

#include <string>

#include "chordalnet/chordal.hpp"
#include "chordalnet/dataset.hpp"
#include "chordalnet/encoder.hpp"
#include "chordalnet/rng.hpp"
#include "chordalnet/scoring.hpp"
#include "chordalnet/solve.hpp"

using namespace chordalnet;

namespace {

std::string random_csv(int n_vars, int rows, std::uint64_t seed) {
    Rng rng(seed);
    std::string csv;
    for (int v = 0; v < n_vars; ++v) {
        if (v) csv += ',';
        csv += 'v' + std::to_string(v);
    }
    csv += '\n';
    for (int r = 0; r < rows; ++r) {
        for (int v = 0; v < n_vars; ++v) {
            if (v) csv += ',';
            csv += std::to_string(rng.below(2));
        }
        csv += '\n';
    }
    return csv;
}

Dataset bench_dataset(int n_vars, int rows) {
    return load_dataset(random_csv(n_vars, rows, 12345));
}

} // namespace

static void BM_LogMarginal(benchmark::State& state) {
    Dataset d = bench_dataset(6, 1000);
    NodeSet subset;
    for (int v = 0; v < state.range(0); ++v) subset.add(v);
    ContingencyTable t = contingency(d, subset);
    PriorSpec prior;
    for (auto _ : state) benchmark::DoNotOptimize(log_marginal(t, prior));
}
BENCHMARK(BM_LogMarginal)->Arg(2)->Arg(4)->Arg(6);

static void BM_BuildScoreTable(benchmark::State& state) {
    Dataset d = bench_dataset(static_cast<int>(state.range(0)), 200);
    PriorSpec prior;
    for (auto _ : state)
        benchmark::DoNotOptimize(build_score_table(d, prior, 0, 1));
}
BENCHMARK(BM_BuildScoreTable)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_IsChordal(benchmark::State& state) {
    Graph g = random_chordal(static_cast<int>(state.range(0)), 0.4, 7);
    for (auto _ : state) benchmark::DoNotOptimize(is_chordal(g).chordal);
}
BENCHMARK(BM_IsChordal)->Arg(8)->Arg(16)->Arg(30);

static void BM_CliquePipeline(benchmark::State& state) {
    // maximal cliques -> clique graph -> spanning forest -> separators
    Graph g = random_chordal(static_cast<int>(state.range(0)), 0.4, 8);
    for (auto _ : state) {
        std::vector<NodeSet> cliques = maximal_cliques(g);
        CliqueGraph cg = clique_graph(cliques);
        SpanningForest f = max_weight_spanning_forest(cg);
        benchmark::DoNotOptimize(separators_of(f));
    }
}
BENCHMARK(BM_CliquePipeline)->Arg(8)->Arg(16)->Arg(30);

static void BM_BuildEncoding(benchmark::State& state) {
    Dataset d = bench_dataset(static_cast<int>(state.range(0)), 200);
    IntScoreTable t = integer_scale(build_score_table(d, PriorSpec{}, 0, 1), 1000);
    for (auto _ : state) benchmark::DoNotOptimize(build_encoding(t).var_count);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildEncoding)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_EmitWcnf(benchmark::State& state) {
    Dataset d = bench_dataset(static_cast<int>(state.range(0)), 200);
    Encoding enc = build_encoding(integer_scale(build_score_table(d, PriorSpec{}, 0, 1), 1000));
    std::size_t bytes = 0;
    for (auto _ : state) {
        std::string wcnf = emit_wcnf(enc);
        benchmark::DoNotOptimize(wcnf.data());
        bytes = wcnf.size();
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(bytes) *
                            static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_EmitWcnf)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_ExhaustiveOracle(benchmark::State& state) {
    Dataset d = bench_dataset(static_cast<int>(state.range(0)), 200);
    ScoreTable t = build_score_table(d, PriorSpec{}, 0, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            exhaustive_optimum(t, static_cast<int>(state.range(0)), 1).objective);
}
BENCHMARK(BM_ExhaustiveOracle)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
