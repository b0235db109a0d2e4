#include "dtifuse/kernels.hpp"

#include <algorithm>


namespace dtifuse::kernels {
namespace {

struct Resolved {
  std::optional<KnowledgeGraph::NodeIndex> source;
  std::optional<KnowledgeGraph::NodeIndex> target;
};

std::vector<Resolved> resolve(const KnowledgeGraph& g, std::span<const EntityPair> pairs) {
  std::vector<Resolved> out;
  out.reserve(pairs.size());
  for (const auto& [d, t] : pairs) {
    if (d == t) {
      throw Error(ErrorKind::SameEntity, "drug and target are the same entity: " + d.normalized());
    }
    out.push_back({g.index_of(d.normalized()), g.index_of(t.normalized())});
  }
  return out;
}

std::vector<double> to_scores(const std::vector<int>& hops) {
  std::vector<double> out(hops.size());
  for (std::size_t i = 0; i < hops.size(); ++i) out[i] = hop_score(HopCount{hops[i]});
  return out;
}

constexpr std::size_t kGramChunk = 4096;

Gram gram_range(const FitProblem& p, std::size_t begin, std::size_t end) {
  Gram gm;
  for (std::size_t r = begin; r < end; ++r) {
    const auto& a = p.scores[r];
    const double b = p.truth[r];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) gm.g[3 * i + j] += a[i] * a[j];
      gm.c[i] += a[i] * b;
    }
    gm.bb += b * b;
  }
  return gm;
}

void accumulate(Gram& into, const Gram& part) {
  for (int k = 0; k < 9; ++k) into.g[k] += part.g[k];
  for (int k = 0; k < 3; ++k) into.c[k] += part.c[k];
  into.bb += part.bb;
}

}  // namespace

std::vector<int> hop_counts(const KnowledgeGraph& g, std::span<const EntityPair> pairs) {
  const auto resolved = resolve(g, pairs);
  std::vector<int> out(resolved.size(), HopCount::kNoPath);
  const auto n = static_cast<std::ptrdiff_t>(resolved.size());
#pragma omp parallel
  {
    BfsWorkspace ws;
#pragma omp for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto& r = resolved[static_cast<std::size_t>(i)];
      if (r.source && r.target) out[static_cast<std::size_t>(i)] = ws.distance(g, *r.source, *r.target);
    }
  }
  return out;
}

std::vector<double> kg_scores(const KnowledgeGraph& g, std::span<const EntityPair> pairs) {
  return to_scores(hop_counts(g, pairs));
}

std::vector<int> result_scores(std::span<const SearchResultRecord> records, const EntityId& drug,
                               const EntityId& target, const FusionConfig& cfg) {
  std::vector<int> out(records.size(), 0);
  const auto n = static_cast<std::ptrdiff_t>(records.size());
  // small result pages are not worth a thread team
#pragma omp parallel for schedule(static) if (n > 256)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = score_result(records[static_cast<std::size_t>(i)], drug, target, cfg);
  }
  return out;
}

Gram gram(const FitProblem& p) {
  const std::size_t rows = p.rows();
  const std::size_t chunks = (rows + kGramChunk - 1) / kGramChunk;
  std::vector<Gram> partial(chunks);
  const auto n = static_cast<std::ptrdiff_t>(chunks);
#pragma omp parallel for schedule(static) if (n > 1)
  for (std::ptrdiff_t c = 0; c < n; ++c) {
    const auto begin = static_cast<std::size_t>(c) * kGramChunk;
    partial[static_cast<std::size_t>(c)] = gram_range(p, begin, std::min(rows, begin + kGramChunk));
  }
  // fixed chunking and in-order combination keep the sums independent of
  // the thread count
  Gram total;
  for (const auto& part : partial) accumulate(total, part);
  return total;
}

namespace serial {

std::vector<int> hop_counts(const KnowledgeGraph& g, std::span<const EntityPair> pairs) {
  const auto resolved = resolve(g, pairs);
  std::vector<int> out;
  out.reserve(resolved.size());
  BfsWorkspace ws;
  for (const auto& r : resolved) {
    out.push_back(r.source && r.target ? ws.distance(g, *r.source, *r.target) : HopCount::kNoPath);
  }
  return out;
}

std::vector<double> kg_scores(const KnowledgeGraph& g, std::span<const EntityPair> pairs) {
  return to_scores(hop_counts(g, pairs));
}

std::vector<int> result_scores(std::span<const SearchResultRecord> records, const EntityId& drug,
                               const EntityId& target, const FusionConfig& cfg) {
  std::vector<int> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(score_result(r, drug, target, cfg));
  return out;
}

Gram gram(const FitProblem& p) { return gram_range(p, 0, p.rows()); }

}  // namespace serial
}  // namespace dtifuse::kernels
