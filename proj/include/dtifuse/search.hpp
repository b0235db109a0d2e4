#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dtifuse/core.hpp"

namespace dtifuse {

struct SearchResultRecord {
  std::string title;
  std::string link;
  std::string snippet;
};

struct SearchScoreBreakdown {
  std::vector<int> per_result;  // each in {0,1,2,3}
  std::int64_t total = 0;
  std::int64_t max_possible = 0;
  double dti_score = 0.0;
};

/// "<drug> <target> interaction", using display names.
std::string formulate_query(const EntityId& drug, const EntityId& target);

/// Sum of three indicators over lower-cased title + snippet: both names
/// present, any positive keyword, any strong keyword. Plain substring
/// matching, so "strong" also fires on "strongly".
int score_result(const SearchResultRecord& r, const EntityId& drug, const EntityId& target,
                 const FusionConfig& cfg);

/// round(total / max_possible, 2), half away from zero, computed in
/// integer arithmetic; 0 when max_possible is 0.
double normalized_search_score(std::int64_t total, std::int64_t max_possible);

SearchScoreBreakdown search_dti_score(std::span<const SearchResultRecord> results,
                                      const EntityId& drug, const EntityId& target,
                                      const FusionConfig& cfg);

}  // namespace dtifuse
