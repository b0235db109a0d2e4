#pragma once

#include <array>

#include "dtifuse/core.hpp"

namespace dtifuse {

/// alpha*ml + beta*search + (1-alpha-beta)*kg.
/// Throws Error{InvalidWeights} outside the open region or on non-finite
/// scores.
double merge(double ml, double search, double kg, double alpha, double beta);

/// Dot product of `w` with (ml, search, kg).
double merge_with_weights(double ml, double search, double kg, const WeightVector& w);

ScoreBundle make_bundle(double ml, double search, double kg, const WeightVector& w);

/// Per-agent terms w_i * s_i in (ml, search, kg) order; they sum to merged.
std::array<double, 3> contributions(const ScoreBundle& b);

// The fitted-weight literature orders components (AI, KG, Search). These
// convert between that order and the (ml, search, kg) order used here.
std::array<double, 3> to_ai_kg_search(const WeightVector& w);
WeightVector from_ai_kg_search(const std::array<double, 3>& ai_kg_search);

}  // namespace dtifuse
