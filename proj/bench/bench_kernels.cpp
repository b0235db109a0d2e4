// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "dtifuse/kernels.hpp"

using namespace dtifuse;

namespace {

struct GraphFixture {
  KnowledgeGraph graph;
  std::vector<kernels::EntityPair> pairs;
};

const GraphFixture& graph_fixture() {
  static const GraphFixture f = [] {
    constexpr int kNodes = 20'000;
    constexpr int kEdges = 60'000;
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> node(0, kNodes - 1);
    std::vector<InteractionEdge> edges;
    edges.reserve(kEdges);
    for (int i = 0; i < kEdges; ++i) {
      edges.push_back({"n" + std::to_string(node(rng)), "n" + std::to_string(node(rng))});
    }
    GraphFixture out{build_graph(edges).graph, {}};
    for (int i = 0; i < 512; ++i) {
      int a = node(rng), b = node(rng);
      if (a == b) b = (b + 1) % kNodes;
      out.pairs.emplace_back(EntityId::from("n" + std::to_string(a)), EntityId::from("n" + std::to_string(b)));
    }
    return out;
  }();
  return f;
}

std::vector<SearchResultRecord> make_records(std::size_t n) {
  const char* words[] = {"topotecan", "top1", "inhibits", "strongly", "binding", "unrelated", "cell", "assay"};
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> pick(0, 7);
  std::vector<SearchResultRecord> out(n);
  for (auto& r : out) {
    for (int k = 0; k < 8; ++k) r.title += std::string(words[pick(rng)]) + " ";
    for (int k = 0; k < 40; ++k) r.snippet += std::string(words[pick(rng)]) + " ";
  }
  return out;
}

FitProblem make_problem(std::size_t rows) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> val(0.0, 10.0);
  FitProblem p;
  for (std::size_t i = 0; i < rows; ++i) {
    p.scores.push_back({val(rng), val(rng), val(rng)});
    p.truth.push_back(val(rng));
  }
  return p;
}

void BM_HopCountsSerial(benchmark::State& state) {
  const auto& f = graph_fixture();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::hop_counts(f.graph, f.pairs));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.pairs.size()));
}

void BM_HopCountsParallel(benchmark::State& state) {
  const auto& f = graph_fixture();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::hop_counts(f.graph, f.pairs));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.pairs.size()));
}

void BM_ResultScoresSerial(benchmark::State& state) {
  const auto records = make_records(static_cast<std::size_t>(state.range(0)));
  const auto d = EntityId::from("Topotecan"), t = EntityId::from("TOP1");
  const FusionConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::result_scores(records, d, t, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ResultScoresParallel(benchmark::State& state) {
  const auto records = make_records(static_cast<std::size_t>(state.range(0)));
  const auto d = EntityId::from("Topotecan"), t = EntityId::from("TOP1");
  const FusionConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(kernels::result_scores(records, d, t, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_GramSerial(benchmark::State& state) {
  const auto p = make_problem(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::gram(p));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_GramParallel(benchmark::State& state) {
  const auto p = make_problem(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::gram(p));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_HopCountsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HopCountsParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ResultScoresSerial)->Arg(1'000)->Arg(100'000);
BENCHMARK(BM_ResultScoresParallel)->Arg(1'000)->Arg(100'000)->UseRealTime();
BENCHMARK(BM_GramSerial)->Arg(10'000)->Arg(1'000'000);
BENCHMARK(BM_GramParallel)->Arg(10'000)->Arg(1'000'000)->UseRealTime();

BENCHMARK_MAIN();
