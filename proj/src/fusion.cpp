#include "dtifuse/fusion.hpp"

#include <cmath>

namespace dtifuse {
namespace {

void require_finite(double ml, double search, double kg) {
  if (!std::isfinite(ml) || !std::isfinite(search) || !std::isfinite(kg)) {
    throw Error(ErrorKind::InvalidWeights, "scores to merge must be finite");
  }
}

}  // namespace

double merge(double ml, double search, double kg, double alpha, double beta) {
  return merge_with_weights(ml, search, kg, WeightVector::from_alpha_beta(alpha, beta));
}

double merge_with_weights(double ml, double search, double kg, const WeightVector& w) {
  require_finite(ml, search, kg);
  return w.ml() * ml + w.search() * search + w.kg() * kg;
}

ScoreBundle make_bundle(double ml, double search, double kg, const WeightVector& w) {
  return {ml, search, kg, merge_with_weights(ml, search, kg, w), w};
}

std::array<double, 3> contributions(const ScoreBundle& b) {
  return {b.weights.ml() * b.ml, b.weights.search() * b.search, b.weights.kg() * b.kg};
}

std::array<double, 3> to_ai_kg_search(const WeightVector& w) {
  return {w.ml(), w.kg(), w.search()};
}

WeightVector from_ai_kg_search(const std::array<double, 3>& ai_kg_search) {
  return WeightVector::make(ai_kg_search[0], ai_kg_search[2], ai_kg_search[1]);
}

}  // namespace dtifuse
