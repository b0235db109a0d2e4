#include "dtifuse/pipeline.hpp"

#include <cstdio>
#include <future>

#include "dtifuse/fusion.hpp"
#include "dtifuse/kg_io.hpp"

namespace dtifuse {
namespace {

using Clock = std::chrono::steady_clock;

std::string real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct Outcome {
  std::optional<double> score;
  AgentStatus status;
  std::optional<SearchScoreBreakdown> breakdown;
  std::optional<int> hops;
};

Outcome ok(double score) { return {score, {AgentState::Ok, {}}, {}, {}}; }
Outcome failed(const std::string& reason) { return {{}, {AgentState::Failed, reason}, {}, {}}; }
Outcome skipped(const std::string& reason) { return {{}, {AgentState::Skipped, reason}, {}, {}}; }

std::string describe(const Error& e) { return std::string(to_string(e.kind())) + ": " + e.what(); }

Outcome run_ml(const Resources& res, const EntityId& drug, const EntityId& target) {
  if (!res.predictor) return skipped("no predictor configured");
  if (!res.catalog) return skipped("no drug/target catalog loaded");
  try {
    const auto* d = res.catalog->find_drug(drug);
    if (!d) throw Error(ErrorKind::UnknownEntity, "drug '" + drug.raw() + "' not found");
    const auto* t = res.catalog->find_target(target);
    if (!t) throw Error(ErrorKind::UnknownEntity, "target '" + target.raw() + "' not found");
    return ok(res.predictor->predict({*d, *t}).value);
  } catch (const Error& e) {
    return failed(describe(e));
  }
}

Outcome run_search(const Resources& res, const EntityId& drug, const EntityId& target) {
  if (!res.retriever) return skipped("no search backend configured");
  try {
    const auto results = res.retriever->fetch_results(formulate_query(drug, target),
                                                      res.config.search_result_count);
    auto breakdown = search_dti_score(results, drug, target, res.config);
    auto out = ok(breakdown.dti_score);
    out.breakdown = std::move(breakdown);
    return out;
  } catch (const Error& e) {
    return failed(describe(e));
  }
}

Outcome run_kg(const Resources& res, const EntityId& drug, const EntityId& target) {
  if (!res.graph) return skipped("no knowledge graph loaded");
  try {
    const auto h = shortest_hops(*res.graph, drug, target);
    auto out = ok(hop_score(h));
    out.hops = h.value;
    return out;
  } catch (const Error& e) {
    return failed(describe(e));
  }
}

Outcome run_agent(Agent a, const Resources& res, const EntityId& d, const EntityId& t) {
  switch (a) {
    case Agent::Ml: return run_ml(res, d, t);
    case Agent::Search: return run_search(res, d, t);
    case Agent::Kg: return run_kg(res, d, t);
  }
  return skipped("unknown agent");
}

std::string status_line(const char* name, const Outcome& o) {
  std::string s = std::string(name) + "=" + std::string(to_string(o.status.state));
  if (o.score) s += "(" + real(*o.score) + ")";
  return s;
}

}  // namespace

std::string_view to_string(Agent a) {
  switch (a) {
    case Agent::Ml: return "ml";
    case Agent::Search: return "search";
    case Agent::Kg: return "kg";
  }
  return "?";
}

std::string_view to_string(AgentState s) {
  switch (s) {
    case AgentState::Ok: return "OK";
    case AgentState::Failed: return "FAILED";
    case AgentState::Skipped: return "SKIPPED";
  }
  return "?";
}

Resources load_resources(const ResourceOptions& opts) {
  opts.config.validate();
  Resources res;
  res.config = opts.config;
  try {
    if (opts.kg_cache) {
      res.graph = std::make_shared<const KnowledgeGraph>(load_graph_file(*opts.kg_cache));
    }
    if (opts.search_backend == SearchBackend::Http) {
      if (opts.search_url.empty()) {
        throw Error(ErrorKind::RetrievalError, "http search backend needs a URL");
      }
      res.retriever = std::make_shared<const HttpRetriever>(opts.search_url);
    } else if (opts.corpus) {
      res.retriever = std::make_shared<const CorpusRetriever>(CorpusRetriever::from_file(*opts.corpus));
    }
    if (opts.drug_table.has_value() != opts.target_table.has_value()) {
      throw Error(ErrorKind::IngestError, "drug and target tables must be given together");
    }
    if (opts.drug_table) {
      res.catalog = std::make_shared<const EntityCatalog>(
          load_catalog(*opts.drug_table, *opts.target_table).catalog);
    }
    if (opts.predictor == "surrogate") {
      res.predictor = std::make_shared<const SurrogatePredictor>();
    } else if (opts.predictor == "remote") {
      if (opts.remote_url.empty()) {
        throw Error(ErrorKind::PredictorUnavailable, "remote predictor needs a URL");
      }
      res.predictor = std::make_shared<const RemotePredictor>(opts.remote_url);
    } else {
      throw Error(ErrorKind::InvalidConfig, "unknown predictor '" + opts.predictor + "'");
    }
  } catch (const Error& e) {
    throw Error(ErrorKind::BatchSetupError, describe(e));
  }
  return res;
}

Coordinator::Coordinator(Resources resources) : resources_(std::move(resources)) {
  resources_.config.validate();
}

ScoreReport Coordinator::run_query(const Query& q, const RunOptions& options) const {
  ScoreReport rep;
  rep.drug = q.drug;
  rep.target = q.target;
  rep.alpha = q.alpha;
  rep.beta = q.beta;

  auto step = [&rep](std::size_t i, std::string inputs, std::string output, Clock::time_point start) {
    rep.trace.push_back({kWorkflowSteps[i], std::move(inputs), std::move(output), Clock::now() - start});
  };

  // 1. query initialization
  auto start = Clock::now();
  std::optional<EntityId> drug, target;
  try {
    drug = EntityId::from(q.drug);
    target = EntityId::from(q.target);
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidQuery, e.what());
  }
  if (!weights_in_open_region(q.alpha, q.beta)) {
    throw Error(ErrorKind::InvalidQuery, "alpha=" + real(q.alpha) + ", beta=" + real(q.beta) +
                                             " violate 0 < alpha, beta < 1, alpha + beta < 1");
  }
  const auto weights = WeightVector::from_alpha_beta(q.alpha, q.beta);
  step(0, "drug=" + drug->raw() + " target=" + target->raw() + " alpha=" + real(q.alpha) +
              " beta=" + real(q.beta),
       "validated", start);

  // 2. task allocation
  start = Clock::now();
  const auto& res = resources_;
  std::string plan = "ml->" + (res.predictor ? res.predictor->name() : std::string("none")) +
                     " search->" + (res.retriever ? res.retriever->name() : std::string("none")) +
                     " kg->" +
                     (res.graph ? "graph(" + std::to_string(res.graph->node_count()) + " nodes)"
                                : std::string("none"));
  step(1, "agents=ml,search,kg", plan, start);

  // 3. independent processing
  start = Clock::now();
  std::array<Outcome, 3> outcomes;  // indexed by Agent
  if (options.concurrent) {
    std::array<std::future<Outcome>, 3> futures;
    for (auto a : options.order) {
      futures[static_cast<std::size_t>(a)] =
          std::async(std::launch::async, run_agent, a, std::cref(res), std::cref(*drug), std::cref(*target));
    }
    for (std::size_t i = 0; i < 3; ++i) outcomes[i] = futures[i].get();
  } else {
    for (auto a : options.order) outcomes[static_cast<std::size_t>(a)] = run_agent(a, res, *drug, *target);
  }
  auto& ml = outcomes[static_cast<std::size_t>(Agent::Ml)];
  auto& search = outcomes[static_cast<std::size_t>(Agent::Search)];
  auto& kg = outcomes[static_cast<std::size_t>(Agent::Kg)];

  rep.ml = ml.score;
  rep.search = search.score;
  rep.kg = kg.score;
  rep.ml_status = ml.status;
  rep.search_status = search.status;
  rep.kg_status = kg.status;
  rep.search_breakdown = search.breakdown;
  rep.hops = kg.hops;
  step(2, "query=\"" + formulate_query(*drug, *target) + "\"",
       status_line("ml", ml) + " " + status_line("search", search) + " " + status_line("kg", kg),
       start);

  if (ml.status.state == AgentState::Failed && search.status.state == AgentState::Failed &&
      kg.status.state == AgentState::Failed) {
    throw Error(ErrorKind::PipelineError, "all scorers failed; ml: " + ml.status.reason +
                                              "; search: " + search.status.reason +
                                              "; kg: " + kg.status.reason);
  }

  // 4. score synthesis
  start = Clock::now();
  std::string synthesis;
  if (ml.score && search.score && kg.score) {
    rep.bundle = make_bundle(*ml.score, *search.score, *kg.score, weights);
    synthesis = "merged=" + real(rep.bundle->merged);
  } else {
    synthesis = "merged withheld:";
    for (auto a : {Agent::Ml, Agent::Search, Agent::Kg}) {
      if (!outcomes[static_cast<std::size_t>(a)].score) synthesis += " " + std::string(to_string(a));
    }
    synthesis += " not OK";
  }
  step(3, "weights=(" + real(weights.ml()) + "," + real(weights.search()) + "," + real(weights.kg()) + ")",
       synthesis, start);

  // 5. result integration
  start = Clock::now();
  std::string integration = "contributions unavailable";
  if (rep.bundle) {
    const auto c = contributions(*rep.bundle);
    integration = "ml=" + real(c[0]) + " search=" + real(c[1]) + " kg=" + real(c[2]);
  }
  step(4, "bundle", integration, start);

  // 6. delivery
  start = Clock::now();
  step(5, "report", rep.bundle ? "complete" : "partial", start);
  return rep;
}

std::vector<ScoreReport> Coordinator::run_batch(std::span<const Query> queries, bool parallel) const {
  std::vector<ScoreReport> out(queries.size());
  const auto n = static_cast<std::ptrdiff_t>(queries.size());
#pragma omp parallel for schedule(dynamic) if (parallel && n > 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& q = queries[static_cast<std::size_t>(i)];
    auto& slot = out[static_cast<std::size_t>(i)];
    try {
      slot = run_query(q);
    } catch (const Error& e) {
      slot = ScoreReport{};
      slot.drug = q.drug;
      slot.target = q.target;
      slot.alpha = q.alpha;
      slot.beta = q.beta;
      slot.failure = ReportFailure{e.kind(), e.what()};
    } catch (const std::exception& e) {
      slot = ScoreReport{};
      slot.drug = q.drug;
      slot.target = q.target;
      slot.alpha = q.alpha;
      slot.beta = q.beta;
      slot.failure = ReportFailure{ErrorKind::PipelineError, e.what()};
    }
  }
  return out;
}

}  // namespace dtifuse
