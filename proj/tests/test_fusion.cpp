#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "case_studies.hpp"
#include "dtifuse/fusion.hpp"

using namespace dtifuse;

TEST_CASE("merge examples") {
  CHECK(std::abs(merge(7.649889945983887, 0.27, 1.0, 0.3, 0.3) - 2.7759669837951663) < 1e-12);
  CHECK(merge(1, 0, 0, 0.3, 0.3) == 0.3);
  for (double s : {-2.5, 0.0, 0.42, 7.0}) {
    CHECK(merge(s, s, s, 0.2, 0.5) == doctest::Approx(s).epsilon(1e-15));
  }
}

TEST_CASE("merge rejects invalid weights and scores") {
  CHECK_THROWS_AS(merge(1, 1, 1, 0.0, 0.3), Error);
  CHECK_THROWS_AS(merge(1, 1, 1, 0.5, 0.5), Error);
  CHECK_THROWS_AS(merge(1, 1, 1, 1.0, 0.1), Error);
  CHECK_THROWS_AS(merge(NAN, 1, 1, 0.3, 0.3), Error);
  try {
    merge(1, 1, 1, 0.7, 0.4);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidWeights);
  }
}

TEST_CASE("merge_with_weights examples") {
  CHECK(merge_with_weights(5, 0.2, 0.9, WeightVector::make(1, 0, 0)) == 5);
  CHECK(merge_with_weights(3, 0, 0, WeightVector::make(1.0 / 3, 1.0 / 3, 1.0 / 3)) ==
        doctest::Approx(1.0).epsilon(1e-15));
  const auto w = WeightVector::make(0.3, 0.3, 0.4);
  CHECK(std::abs(merge_with_weights(7.363409519195557, 0.33, 0.7213475204444817, w) -
                 2.59656186393645978) < 1e-12);
}

TEST_CASE("case-study components merge by the formula, not to the printed values") {
  for (const auto& c : dtifuse::testing::kCaseStudies) {
    const double merged = merge(c.ml, c.search, c.kg, 0.3, 0.3);
    CHECK(std::abs(merged - c.formula_merged) < 1e-12);
    CHECK(std::abs(merged - c.reported_merged) > 0.1);
  }
}

TEST_CASE("convexity, linearity and route agreement on random samples") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> score(-10.0, 10.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int checked = 0;
  while (checked < 10'000) {
    const double a = unit(rng), b = unit(rng);
    if (!weights_in_open_region(a, b)) continue;
    ++checked;
    const double ml = score(rng), s = score(rng), kg = score(rng);
    const double merged = merge(ml, s, kg, a, b);
    const double lo = std::min({ml, s, kg}), hi = std::max({ml, s, kg});
    const double slack = 1e-12 * std::max(1.0, std::abs(hi));
    CHECK(merged >= lo - slack);
    CHECK(merged <= hi + slack);
    CHECK(std::abs(merged - (a * ml + b * s + (1 - a - b) * kg)) < 1e-12);
    CHECK(merged == merge_with_weights(ml, s, kg, WeightVector::make(a, b, 1 - a - b)));

    const double k = score(rng), c = score(rng);
    CHECK(std::abs(merge(k * ml, k * s, k * kg, a, b) - k * merged) < 1e-12 * (1 + std::abs(k * merged)));
    CHECK(std::abs(merge(ml + c, s + c, kg + c, a, b) - (merged + c)) < 1e-12 * (1 + std::abs(merged + c)));
  }
}

TEST_CASE("contributions sum to the merged score") {
  const auto b = make_bundle(7.649889945983887, 0.27, 1.0, WeightVector::from_alpha_beta(0.3, 0.3));
  const auto c = contributions(b);
  CHECK(c[0] + c[1] + c[2] == doctest::Approx(b.merged).epsilon(1e-15));
}

TEST_CASE("appendix (AI, KG, Search) order mapping") {
  const auto w = WeightVector::make(0.5, 0.2, 0.3);
  const auto appendix = to_ai_kg_search(w);
  CHECK(appendix == std::array<double, 3>{0.5, 0.3, 0.2});
  const auto back = from_ai_kg_search(appendix);
  CHECK(back.values() == w.values());
  // appendix formula x1*S_AI + x2*S_KG + x3*S_Search equals ours
  const double ai = 6.0, search = 0.4, kg = 0.9;
  CHECK(appendix[0] * ai + appendix[1] * kg + appendix[2] * search ==
        doctest::Approx(merge_with_weights(ai, search, kg, w)));
}
