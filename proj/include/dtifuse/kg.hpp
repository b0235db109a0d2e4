#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dtifuse/core.hpp"

namespace dtifuse {

enum class Provenance { DGIdb, DrugBank, CTD, STITCH, Other };

std::string_view to_string(Provenance p);
// Case-insensitive; unknown names yield nullopt.
std::optional<Provenance> parse_provenance(std::string_view text);

/// One interaction row as read from an edge list. Endpoints are raw text
/// and are normalized during build_graph.
struct InteractionEdge {
  std::string source;
  std::string dest;
  Provenance provenance = Provenance::Other;
};

struct IngestReport {
  std::size_t rows = 0;
  std::size_t accepted = 0;
  std::size_t malformed = 0;
  std::size_t self_loops = 0;
  std::size_t duplicates = 0;
  std::vector<std::string> diagnostics;

  void merge(const IngestReport& other);
};

/// Immutable undirected graph over normalized entity names, stored as CSR.
/// Node indices follow lexicographic order of the names and every
/// neighbor list is sorted, so two builds over the same edge set are
/// identical regardless of input order.
class KnowledgeGraph {
 public:
  using NodeIndex = std::uint32_t;

  KnowledgeGraph() : offsets_{0} {}

  /// Validates symmetry, sortedness and bounds. Throws Error{CacheError}.
  static KnowledgeGraph from_csr(std::vector<std::string> names,
                                 std::vector<std::uint64_t> offsets,
                                 std::vector<NodeIndex> neighbors);

  std::size_t node_count() const noexcept { return names_.size(); }
  std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }

  std::optional<NodeIndex> index_of(std::string_view normalized) const;
  bool contains(const EntityId& id) const { return index_of(id.normalized()).has_value(); }

  const std::string& name(NodeIndex v) const { return names_[v]; }
  std::span<const NodeIndex> neighbors(NodeIndex v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeIndex v) const { return offsets_[v + 1] - offsets_[v]; }

  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<std::uint64_t>& offsets() const noexcept { return offsets_; }
  const std::vector<NodeIndex>& adjacency() const noexcept { return neighbors_; }

  friend bool operator==(const KnowledgeGraph&, const KnowledgeGraph&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<std::uint64_t> offsets_;
  std::vector<NodeIndex> neighbors_;
};

struct GraphBuild {
  KnowledgeGraph graph;
  IngestReport report;
};

/// Deduplicates, symmetrizes and drops self-loops. Rows with an empty
/// endpoint are counted as malformed and skipped.
GraphBuild build_graph(std::span<const InteractionEdge> edges);

/// Shortest-path length in edges. `kNoPath` when either endpoint is absent
/// or the two are disconnected.
struct HopCount {
  static constexpr int kNoPath = -1;
  int value = kNoPath;

  bool reachable() const noexcept { return value > 0; }
  friend bool operator==(HopCount, HopCount) = default;
};

/// Reusable BFS scratch space. One per thread.
class BfsWorkspace {
 public:
  /// Distance from `source` to `target`, or -1. Stops as soon as the
  /// target is reached. source == target yields 0.
  int distance(const KnowledgeGraph& g, KnowledgeGraph::NodeIndex source,
               KnowledgeGraph::NodeIndex target);

 private:
  std::vector<int> dist_;
  std::vector<KnowledgeGraph::NodeIndex> frontier_;
  std::vector<KnowledgeGraph::NodeIndex> next_;
  std::vector<KnowledgeGraph::NodeIndex> touched_;
};

/// Throws Error{SameEntity} when d and t normalize to the same name.
HopCount shortest_hops(const KnowledgeGraph& g, const EntityId& d, const EntityId& t);

/// Piecewise hop score: 0 for no path, 1 for a direct edge, 1/ln(1+h)
/// otherwise. Throws Error{SameEntity} for h == 0.
double hop_score(HopCount h);

double kg_dti_score(const KnowledgeGraph& g, const EntityId& d, const EntityId& t);

}  // namespace dtifuse
