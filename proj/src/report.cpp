#include "dtifuse/report.hpp"

#include "dtifuse/fusion.hpp"

namespace dtifuse {
namespace {

nlohmann::json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json status_json(const AgentStatus& s) {
  nlohmann::json j{{"state", to_string(s.state)}};
  if (!s.reason.empty()) j["reason"] = s.reason;
  return j;
}

}  // namespace

nlohmann::json to_json(const ScoreReport& r, bool include_durations) {
  nlohmann::json j;
  j["drug"] = r.drug;
  j["target"] = r.target;
  j["alpha"] = r.alpha;
  j["beta"] = r.beta;
  j["ml_dti_score"] = optional_number(r.ml);
  j["search_dti_score"] = optional_number(r.search);
  j["kg_dti_score"] = optional_number(r.kg);
  j["merged_dti_score"] =
      r.bundle ? nlohmann::json(r.bundle->merged) : nlohmann::json(nullptr);
  j["status"] = {{"ml", status_json(r.ml_status)},
                 {"search", status_json(r.search_status)},
                 {"kg", status_json(r.kg_status)}};
  if (r.bundle) {
    const auto c = contributions(*r.bundle);
    j["weights"] = {{"ml", r.bundle->weights.ml()},
                    {"search", r.bundle->weights.search()},
                    {"kg", r.bundle->weights.kg()}};
    j["contributions"] = {{"ml", c[0]}, {"search", c[1]}, {"kg", c[2]}};
  } else {
    j["contributions"] = nullptr;
  }
  if (r.search_breakdown) {
    j["search_breakdown"] = {{"per_result", r.search_breakdown->per_result},
                             {"total", r.search_breakdown->total},
                             {"max_possible", r.search_breakdown->max_possible}};
  }
  if (r.hops) j["hops"] = *r.hops;
  if (r.failure) {
    j["error"] = {{"kind", to_string(r.failure->kind)}, {"message", r.failure->message}};
  }
  auto trace = nlohmann::json::array();
  for (const auto& t : r.trace) {
    nlohmann::json rec{{"step", t.step}, {"inputs", t.inputs}, {"output", t.output}};
    if (include_durations) {
      rec["duration_ms"] = std::chrono::duration<double, std::milli>(t.duration).count();
    }
    trace.push_back(std::move(rec));
  }
  j["trace"] = std::move(trace);
  return j;
}

nlohmann::json to_json(const FitResult& r) {
  const auto appendix = to_ai_kg_search(r.weights);
  return {
      {"weights", {{"ml", r.weights.ml()}, {"search", r.weights.search()}, {"kg", r.weights.kg()}}},
      {"weights_ai_kg_search", appendix},
      {"objective", r.objective},
      {"iterations", r.iterations},
      {"converged", r.converged},
  };
}

}  // namespace dtifuse
