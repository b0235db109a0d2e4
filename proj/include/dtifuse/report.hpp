#pragma once

#include <nlohmann/json.hpp>

#include "dtifuse/pipeline.hpp"
#include "dtifuse/weightfit.hpp"

namespace dtifuse {

/// Output record per query:
///   {"drug", "target", "alpha", "beta",
///    "ml_dti_score": number|null, "search_dti_score": number|null,
///    "kg_dti_score": number|null, "merged_dti_score": number|null,
///    "status": {"ml": {"state", "reason"?}, "search": ..., "kg": ...},
///    "contributions": {"ml", "search", "kg"} | null,
///    "search_breakdown": {...}?, "hops": int?, "error": {...}?,
///    "trace": [{"step", "inputs", "output", "duration_ms"?}, ...]}
nlohmann::json to_json(const ScoreReport& r, bool include_durations = true);

nlohmann::json to_json(const FitResult& r);

}  // namespace dtifuse
