#pragma once

#include <array>
#include <chrono>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dtifuse/catalog.hpp"
#include "dtifuse/core.hpp"
#include "dtifuse/kg.hpp"
#include "dtifuse/predictor.hpp"
#include "dtifuse/retrieval.hpp"
#include "dtifuse/search.hpp"

namespace dtifuse {

enum class Agent { Ml, Search, Kg };
std::string_view to_string(Agent a);

enum class AgentState { Ok, Failed, Skipped };
std::string_view to_string(AgentState s);

struct AgentStatus {
  AgentState state = AgentState::Skipped;
  std::string reason;  // empty unless Failed or Skipped
};

struct TraceRecord {
  std::string step;
  std::string inputs;
  std::string output;
  std::chrono::nanoseconds duration{0};
};

struct Query {
  std::string drug;
  std::string target;
  double alpha = 0.3;
  double beta = 0.3;
};

struct ReportFailure {
  ErrorKind kind;
  std::string message;
};

struct ScoreReport {
  std::string drug;
  std::string target;
  double alpha = 0.0;
  double beta = 0.0;

  std::optional<double> ml;
  std::optional<double> search;
  std::optional<double> kg;
  std::optional<ScoreBundle> bundle;  // only when all three agents are Ok

  std::optional<SearchScoreBreakdown> search_breakdown;
  std::optional<int> hops;

  AgentStatus ml_status;
  AgentStatus search_status;
  AgentStatus kg_status;

  std::vector<TraceRecord> trace;  // one record per workflow step

  // Set only by run_batch for queries that did not produce scores.
  std::optional<ReportFailure> failure;
};

/// Shared, read-only inputs for the three scorers. A null member disables
/// that scorer (reported as Skipped).
struct Resources {
  std::shared_ptr<const KnowledgeGraph> graph;
  std::shared_ptr<const Retriever> retriever;
  std::shared_ptr<const Predictor> predictor;
  std::shared_ptr<const EntityCatalog> catalog;
  FusionConfig config;
};

enum class SearchBackend { Corpus, Http };

struct ResourceOptions {
  std::optional<std::filesystem::path> kg_cache;
  std::optional<std::filesystem::path> corpus;
  SearchBackend search_backend = SearchBackend::Corpus;
  std::string search_url;
  std::optional<std::filesystem::path> drug_table;
  std::optional<std::filesystem::path> target_table;
  std::string predictor = "surrogate";  // surrogate | remote
  std::string remote_url;
  FusionConfig config;
};

/// Loads everything named in `opts` once. Throws Error{BatchSetupError}
/// when any named resource cannot be read.
Resources load_resources(const ResourceOptions& opts);

struct RunOptions {
  // Execution order when not concurrent. Any permutation gives the same
  // scores because the scorers share no mutable state.
  std::array<Agent, 3> order{Agent::Ml, Agent::Search, Agent::Kg};
  bool concurrent = false;
};

/// Deterministic replacement for the coordinating agent: validates the
/// query, runs the ML, search and KG scorers independently, merges when
/// all three succeed, and records a six-step trace.
class Coordinator {
 public:
  explicit Coordinator(Resources resources);

  /// Throws Error{InvalidQuery} for empty names or weights outside the
  /// open region, Error{PipelineError} when all three scorers fail.
  ScoreReport run_query(const Query& q, const RunOptions& options = {}) const;

  /// One report per query, in input order. Failures are captured in
  /// ScoreReport::failure and never abort the batch.
  std::vector<ScoreReport> run_batch(std::span<const Query> queries, bool parallel = true) const;

  const Resources& resources() const noexcept { return resources_; }

 private:
  Resources resources_;
};

inline constexpr std::array<const char*, 6> kWorkflowSteps = {
    "query_initialization",  "task_allocation",    "independent_processing",
    "score_synthesis",       "result_integration", "delivery",
};

}  // namespace dtifuse
