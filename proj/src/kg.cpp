#include "dtifuse/kg.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <utility>

namespace dtifuse {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::DGIdb: return "DGIDB";
    case Provenance::DrugBank: return "DRUGBANK";
    case Provenance::CTD: return "CTD";
    case Provenance::STITCH: return "STITCH";
    case Provenance::Other: return "OTHER";
  }
  return "OTHER";
}

std::optional<Provenance> parse_provenance(std::string_view text) {
  const auto key = fold_case(trim(text));
  if (key == "dgidb") return Provenance::DGIdb;
  if (key == "drugbank") return Provenance::DrugBank;
  if (key == "ctd") return Provenance::CTD;
  if (key == "stitch") return Provenance::STITCH;
  if (key == "other") return Provenance::Other;
  return std::nullopt;
}

void IngestReport::merge(const IngestReport& other) {
  rows += other.rows;
  accepted += other.accepted;
  malformed += other.malformed;
  self_loops += other.self_loops;
  duplicates += other.duplicates;
  diagnostics.insert(diagnostics.end(), other.diagnostics.begin(), other.diagnostics.end());
}

KnowledgeGraph KnowledgeGraph::from_csr(std::vector<std::string> names,
                                        std::vector<std::uint64_t> offsets,
                                        std::vector<NodeIndex> neighbors) {
  const auto n = names.size();
  auto fail = [](const std::string& why) { throw Error(ErrorKind::CacheError, why); };
  if (offsets.size() != n + 1 || offsets.front() != 0 || offsets.back() != neighbors.size()) {
    fail("adjacency offsets do not match the node table");
  }
  if (neighbors.size() % 2 != 0) fail("odd adjacency length for an undirected graph");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(names[i - 1] < names[i])) fail("node names are not strictly sorted");
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (offsets[v] > offsets[v + 1]) fail("adjacency offsets decrease");
    for (auto k = offsets[v]; k < offsets[v + 1]; ++k) {
      const auto u = neighbors[k];
      if (u >= n || u == v) fail("neighbor index out of range or self-loop");
      if (k > offsets[v] && neighbors[k - 1] >= u) fail("neighbor list not strictly sorted");
    }
  }
  KnowledgeGraph g;
  g.names_ = std::move(names);
  g.offsets_ = std::move(offsets);
  g.neighbors_ = std::move(neighbors);
  for (NodeIndex v = 0; v < n; ++v) {
    for (auto u : g.neighbors(v)) {
      const auto back = g.neighbors(u);
      if (!std::binary_search(back.begin(), back.end(), v)) fail("adjacency is not symmetric");
    }
  }
  return g;
}

std::optional<KnowledgeGraph::NodeIndex> KnowledgeGraph::index_of(std::string_view normalized) const {
  const auto it = std::lower_bound(names_.begin(), names_.end(), normalized,
                                   [](const std::string& a, std::string_view b) { return a < b; });
  if (it == names_.end() || *it != normalized) return std::nullopt;
  return static_cast<NodeIndex>(it - names_.begin());
}

GraphBuild build_graph(std::span<const InteractionEdge> edges) {
  GraphBuild out;
  auto& report = out.report;

  std::vector<std::pair<std::string, std::string>> pairs;
  pairs.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    ++report.rows;
    const auto s = fold_case(trim(e.source));
    const auto d = fold_case(trim(e.dest));
    if (s.empty() || d.empty()) {
      ++report.malformed;
      report.diagnostics.push_back("edge " + std::to_string(i) + ": empty endpoint");
      continue;
    }
    if (s == d) {
      ++report.self_loops;
      continue;
    }
    pairs.emplace_back(std::min(s, d), std::max(s, d));
  }
  std::sort(pairs.begin(), pairs.end());
  const auto unique_end = std::unique(pairs.begin(), pairs.end());
  report.duplicates = static_cast<std::size_t>(pairs.end() - unique_end);
  pairs.erase(unique_end, pairs.end());
  report.accepted = pairs.size();

  std::vector<std::string> names;
  names.reserve(pairs.size() * 2);
  for (const auto& [a, b] : pairs) {
    names.push_back(a);
    names.push_back(b);
  }
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());

  std::unordered_map<std::string_view, KnowledgeGraph::NodeIndex> index;
  index.reserve(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    index.emplace(names[i], static_cast<KnowledgeGraph::NodeIndex>(i));
  }

  std::vector<std::uint64_t> offsets(names.size() + 1, 0);
  std::vector<std::pair<KnowledgeGraph::NodeIndex, KnowledgeGraph::NodeIndex>> ends;
  ends.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    const auto u = index.at(a);
    const auto v = index.at(b);
    ends.emplace_back(u, v);
    ++offsets[u + 1];
    ++offsets[v + 1];
  }
  for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];

  std::vector<KnowledgeGraph::NodeIndex> neighbors(offsets.back());
  auto cursor = offsets;
  for (const auto& [u, v] : ends) {
    neighbors[cursor[u]++] = v;
    neighbors[cursor[v]++] = u;
  }
  for (std::size_t v = 0; v < names.size(); ++v) {
    std::sort(neighbors.begin() + static_cast<std::ptrdiff_t>(offsets[v]),
              neighbors.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]));
  }

  out.graph = KnowledgeGraph::from_csr(std::move(names), std::move(offsets), std::move(neighbors));
  return out;
}

int BfsWorkspace::distance(const KnowledgeGraph& g, KnowledgeGraph::NodeIndex source,
                           KnowledgeGraph::NodeIndex target) {
  if (source == target) return 0;
  if (dist_.size() != g.node_count()) dist_.assign(g.node_count(), -1);

  frontier_.clear();
  touched_.clear();
  frontier_.push_back(source);
  dist_[source] = 0;
  touched_.push_back(source);

  int found = -1;
  int level = 0;
  while (!frontier_.empty() && found < 0) {
    ++level;
    next_.clear();
    for (auto u : frontier_) {
      for (auto v : g.neighbors(u)) {
        if (dist_[v] >= 0) continue;
        dist_[v] = level;
        touched_.push_back(v);
        if (v == target) {
          found = level;
          break;
        }
        next_.push_back(v);
      }
      if (found >= 0) break;
    }
    frontier_.swap(next_);
  }
  // reset only what this query touched
  for (auto v : touched_) dist_[v] = -1;
  return found;
}

HopCount shortest_hops(const KnowledgeGraph& g, const EntityId& d, const EntityId& t) {
  if (d == t) {
    throw Error(ErrorKind::SameEntity, "drug and target are the same entity: " + d.normalized());
  }
  const auto s = g.index_of(d.normalized());
  const auto e = g.index_of(t.normalized());
  if (!s || !e) return HopCount{};
  BfsWorkspace ws;
  return HopCount{ws.distance(g, *s, *e)};
}

double hop_score(HopCount h) {
  if (h.value == 0) {
    throw Error(ErrorKind::SameEntity, "hop score is undefined for zero hops");
  }
  if (h.value < 0) return 0.0;
  if (h.value == 1) return 1.0;
  return 1.0 / std::log1p(static_cast<double>(h.value));
}

double kg_dti_score(const KnowledgeGraph& g, const EntityId& d, const EntityId& t) {
  return hop_score(shortest_hops(g, d, t));
}

}  // namespace dtifuse
