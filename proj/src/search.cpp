#include "dtifuse/search.hpp"

#include <algorithm>

#include "dtifuse/kernels.hpp"

namespace dtifuse {
namespace {

bool contains_any(std::string_view text, const std::vector<std::string>& keywords) {
  return std::any_of(keywords.begin(), keywords.end(), [&](const std::string& kw) {
    return text.find(fold_case(kw)) != std::string_view::npos;
  });
}

}  // namespace

std::string formulate_query(const EntityId& drug, const EntityId& target) {
  return drug.raw() + " " + target.raw() + " interaction";
}

int score_result(const SearchResultRecord& r, const EntityId& drug, const EntityId& target,
                 const FusionConfig& cfg) {
  // space-joined so a match cannot straddle the title/snippet boundary
  const auto text = fold_case(r.title + " " + r.snippet);
  int score = 0;
  if (text.find(drug.normalized()) != std::string::npos &&
      text.find(target.normalized()) != std::string::npos) {
    ++score;
  }
  if (contains_any(text, cfg.positive_keywords)) ++score;
  if (contains_any(text, cfg.strong_keywords)) ++score;
  return score;
}

double normalized_search_score(std::int64_t total, std::int64_t max_possible) {
  if (max_possible <= 0) return 0.0;
  // floor(100 T / M + 1/2) == floor((200 T + M) / (2 M)) for T >= 0
  const std::int64_t hundredths = (200 * total + max_possible) / (2 * max_possible);
  return static_cast<double>(hundredths) / 100.0;
}

SearchScoreBreakdown search_dti_score(std::span<const SearchResultRecord> results,
                                      const EntityId& drug, const EntityId& target,
                                      const FusionConfig& cfg) {
  SearchScoreBreakdown out;
  out.per_result = kernels::result_scores(results, drug, target, cfg);
  for (int s : out.per_result) out.total += s;
  out.max_possible = 3 * static_cast<std::int64_t>(out.per_result.size());
  out.dti_score = normalized_search_score(out.total, out.max_possible);
  return out;
}

}  // namespace dtifuse
