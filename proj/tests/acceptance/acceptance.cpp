// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "case_studies.hpp"
#include "dtifuse/catalog.hpp"
#include "dtifuse/fusion.hpp"
#include "dtifuse/kg.hpp"
#include "dtifuse/kg_io.hpp"
#include "dtifuse/metrics.hpp"
#include "dtifuse/pipeline.hpp"
#include "dtifuse/report.hpp"
#include "dtifuse/retrieval.hpp"
#include "dtifuse/search.hpp"
#include "dtifuse/weightfit.hpp"
#include "support.hpp"

using namespace dtifuse;
namespace t = dtifuse::testing;

namespace {

// Collects the first few failure details for a criterion.
struct Check {
  int failures = 0;
  std::vector<std::string> notes;
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures;
    if (notes.size() < 5) notes.push_back(what);
  }
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

KnowledgeGraph fixture_graph() {
  IngestReport ingest;
  return build_graph(read_edge_list_file(t::data_path("topotecan_edges.tsv"), ingest)).graph;
}

Resources fixture_resources(std::shared_ptr<const Predictor> predictor) {
  Resources r;
  r.graph = std::make_shared<const KnowledgeGraph>(fixture_graph());
  r.retriever =
      std::make_shared<const CorpusRetriever>(CorpusRetriever::from_file(t::data_path("topotecan_corpus.json")));
  r.catalog = std::make_shared<const EntityCatalog>(
      load_catalog(t::data_path("drugs.tsv"), t::data_path("targets.fasta")).catalog);
  r.predictor = std::move(predictor);
  return r;
}

void kg_exactness(Check& c) {
  const auto g = fixture_graph();
  const auto d = EntityId::from("Topotecan");
  const double three = kg_dti_score(g, d, EntityId::from("SLFN11"));
  c.expect(near(three, 0.7213475204444817, 1e-12), "3-hop score " + num(three));
  c.expect(kg_dti_score(g, d, EntityId::from("SLC26A4")) == three, "second 3-hop pair differs");
  c.expect(kg_dti_score(g, d, EntityId::from("TOP1")) == 1.0, "direct edge not exactly 1");
  c.expect(kg_dti_score(g, d, EntityId::from("NOT_IN_GRAPH")) == 0.0, "absent target not 0");
  c.expect(kg_dti_score(g, EntityId::from("Absentol"), EntityId::from("TOP1")) == 0.0, "absent drug not 0");
}

void kg_oracle(Check& c) {
  std::mt19937_64 rng(20240607);
  BfsWorkspace ws;
  for (int trial = 0; trial < 500; ++trial) {
    const auto rg = t::random_graph(rng, 12);
    const auto edges = rg.as_edges();
    const auto g = build_graph(edges).graph;
    const auto oracle = t::floyd_warshall(rg);
    for (int a = 0; a < rg.n; ++a) {
      for (int b = 0; b < rg.n; ++b) {
        if (a == b) continue;
        const auto ea = EntityId::from("n" + std::to_string(a));
        const auto eb = EntityId::from("n" + std::to_string(b));
        const int got = shortest_hops(g, ea, eb).value;
        c.expect(got == oracle[a][b], "graph " + std::to_string(trial) + " pair n" + std::to_string(a) + "-n" +
                                          std::to_string(b) + ": " + std::to_string(got) + " vs " +
                                          std::to_string(oracle[a][b]));
      }
    }
  }
}

void search_arithmetic(Check& c) {
  const auto corpus = CorpusRetriever::from_file(t::data_path("topotecan_corpus.json"));
  const auto drug = EntityId::from("Topotecan");
  const auto target = EntityId::from("TOP1");
  const FusionConfig cfg;
  const auto results = corpus.fetch_results(formulate_query(drug, target), 10);
  const auto b = search_dti_score(results, drug, target, cfg);
  c.expect(results.size() == 10, "fixture has " + std::to_string(results.size()) + " records");
  c.expect(b.total == 8, "fixture total " + std::to_string(b.total));
  c.expect(b.dti_score == 0.27, "fixture D " + num(b.dti_score));
  for (std::int64_t m = 0; m <= 90; ++m) {
    for (std::int64_t tt = 0; tt <= m; ++tt) {
      const double got = normalized_search_score(tt, m);
      const double want = t::rational_round_hundredths(tt, m);
      c.expect(std::memcmp(&got, &want, sizeof got) == 0,
               "T=" + std::to_string(tt) + " M=" + std::to_string(m) + ": " + num(got) + " vs " + num(want));
    }
  }
  c.expect(search_dti_score({}, drug, target, cfg).dti_score == 0.0, "empty results not 0");
}

void fusion_properties(Check& c) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ml(0.0, 10.0), unit(0.0, 1.0);
  int samples = 0;
  while (samples < 10'000) {
    const double a = unit(rng), b = unit(rng);
    if (!(a > 0 && b > 0 && a + b < 1)) continue;
    ++samples;
    const double s[3] = {ml(rng), unit(rng), unit(rng)};
    const double merged = merge(s[0], s[1], s[2], a, b);
    const double lo = std::min({s[0], s[1], s[2]}), hi = std::max({s[0], s[1], s[2]});
    c.expect(merged >= lo && merged <= hi, "merged " + num(merged) + " outside component range");
    const double hand = a * s[0] + b * s[1] + (1.0 - a - b) * s[2];
    c.expect(near(merged, hand, 1e-12), "merged " + num(merged) + " vs hand " + num(hand));
  }
  for (const auto& cs : t::kCaseStudies) {
    const double got = merge(cs.ml, cs.search, cs.kg, 0.3, 0.3);
    c.expect(near(got, cs.formula_merged, 1e-12),
             std::string(cs.target) + " merged " + num(got) + " vs " + num(cs.formula_merged));
    c.expect(!near(got, cs.reported_merged, 1e-3),
             std::string(cs.target) + " unexpectedly matches the printed merged value");
  }
  // The printed merged values are not reachable by any simplex weight triple.
  FitProblem printed;
  for (const auto& cs : t::kCaseStudies) {
    printed.scores.push_back({cs.ml, cs.search, cs.kg});
    printed.truth.push_back(cs.reported_merged);
  }
  const double grid = t::simplex_grid_minimum(printed);
  const auto fit = fit_weights(printed);
  c.expect(grid > 1e-3, "grid oracle fits printed values: " + num(grid));
  c.expect(fit.objective > 1e-3, "fit reproduces printed values: " + num(fit.objective));
  c.expect(fit.objective <= grid + 1e-6, "fit worse than grid on printed values");
}

void weight_fitting(Check& c) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = t::random_fit_problem(rng, 3, 50);
    const auto r = fit_weights(p);
    const double grid = t::simplex_grid_minimum(p);
    c.expect(r.objective <= grid + 1e-6,
             "problem " + std::to_string(trial) + ": " + num(r.objective) + " > grid " + num(grid));
    const auto w = r.weights.values();
    const bool feasible = w[0] >= -1e-9 && w[1] >= -1e-9 && w[2] >= -1e-9 &&
                          near(w[0] + w[1] + w[2], 1.0, 1e-9);
    c.expect(feasible, "problem " + std::to_string(trial) + " weights off the simplex");
  }

  FitProblem first_column;
  FitProblem barycenter;
  std::uniform_real_distribution<double> val(0.0, 10.0);
  for (int i = 0; i < 12; ++i) {
    const std::array<double, 3> row{val(rng), val(rng), val(rng)};
    first_column.scores.push_back(row);
    first_column.truth.push_back(row[0]);
    barycenter.scores.push_back(row);
    barycenter.truth.push_back((row[0] + row[1] + row[2]) / 3.0);
  }
  const auto r1 = fit_weights(first_column);
  const auto w1 = r1.weights.values();
  c.expect(near(w1[0], 1.0, 1e-9) && near(w1[1], 0.0, 1e-9) && near(w1[2], 0.0, 1e-9),
           "(1,0,0) fixture gave " + num(w1[0]) + "," + num(w1[1]) + "," + num(w1[2]));
  c.expect(r1.objective < 1e-12, "(1,0,0) objective " + num(r1.objective));
  const auto r3 = fit_weights(barycenter);
  const auto w3 = r3.weights.values();
  for (double x : w3) c.expect(near(x, 1.0 / 3.0, 1e-9), "barycenter weight " + num(x));
  c.expect(r3.objective < 1e-12, "barycenter objective " + num(r3.objective));
}

void pipeline_determinism(Check& c) {
  const Coordinator surrogate(fixture_resources(std::make_shared<SurrogatePredictor>()));
  for (const char* target : {"TOP1", "SLFN11", "SLC26A4"}) {
    const Query q{"Topotecan", target};
    const auto ref = to_json(surrogate.run_query(q), false).dump();
    for (int i = 0; i < 5; ++i) {
      c.expect(to_json(surrogate.run_query(q), false).dump() == ref, std::string(target) + " rerun differs");
    }
    std::array<Agent, 3> order{Agent::Ml, Agent::Search, Agent::Kg};
    do {
      c.expect(to_json(surrogate.run_query(q, {order, false}), false).dump() == ref,
               std::string(target) + " order-dependent result");
    } while (std::next_permutation(order.begin(), order.end()));
  }

  t::StubServer server(t::sidecar_handler(t::kCaseStudies[0].ml));
  const Coordinator remote(fixture_resources(std::make_shared<RemotePredictor>(server.url())));
  const auto rep = remote.run_query({"Topotecan", "TOP1"});
  c.expect(rep.bundle.has_value(), "Topotecan/TOP1 produced no bundle");
  if (rep.bundle) {
    c.expect(rep.bundle->ml == 7.649889945983887, "ml " + num(rep.bundle->ml));
    c.expect(rep.bundle->search == 0.27, "search " + num(rep.bundle->search));
    c.expect(rep.bundle->kg == 1.0, "kg " + num(rep.bundle->kg));
  }
}

void metrics(Check& c) {
  const auto s1 = PairedSeries::make({1, 2}, {3, 2});
  c.expect(near(mse(s1), 2.0, 1e-12), "mse example");
  const auto same = PairedSeries::make({1, 2, 3}, {1, 2, 3});
  c.expect(near(mse(same), 0.0, 1e-12) && near(r2(same), 1.0, 1e-12), "perfect prediction");
  c.expect(near(r2(PairedSeries::make({2, 2, 2}, {1, 2, 3})), 0.0, 1e-12), "mean predictor r2");
  c.expect(near(r2(PairedSeries::make({0, 0, 0}, {1, 2, 3})), -6.0, 1e-12), "zero predictor r2");
  c.expect(near(correlation(PairedSeries::make({7, 9, 11}, {1, 2, 3})), 1.0, 1e-12), "affine correlation");
  c.expect(near(correlation(PairedSeries::make({-1, -2, -3}, {1, 2, 3})), -1.0, 1e-12), "negated correlation");
  c.expect(near(correlation(PairedSeries::make({1, 2, 3}, {1, 3, 2})), 0.5, 1e-12), "correlation example");

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> val(-10.0, 10.0);
  std::uniform_int_distribution<int> len(2, 500);
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = len(rng);
    std::vector<double> p(m), q(m);
    for (int i = 0; i < m; ++i) {
      p[i] = val(rng);
      q[i] = val(rng);
    }
    const auto s = PairedSeries::make(p, q);
    c.expect(near(mse(s), single_pass::mse(s), 1e-12), "mse series " + std::to_string(trial));
    c.expect(near(r2(s), single_pass::r2(s), 1e-12), "r2 series " + std::to_string(trial));
    c.expect(near(correlation(s), single_pass::correlation(s), 1e-12), "correlation series " + std::to_string(trial));
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria{
      {"KG score exactness", kg_exactness},
      {"KG oracle equivalence", kg_oracle},
      {"Search arithmetic", search_arithmetic},
      {"Fusion properties", fusion_properties},
      {"Weight fitting optimality", weight_fitting},
      {"Pipeline determinism and independence", pipeline_determinism},
      {"Metrics", metrics},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Check c;
    try {
      run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::printf("%s: %s\n", c.failures == 0 ? "PASS" : "FAIL", name);
    for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
    if (c.failures) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
