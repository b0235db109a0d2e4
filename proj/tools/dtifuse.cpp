// dtifuse command-line front end: score, batch, build-kg, fit-weights, eval.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dtifuse/config.hpp"
#include "dtifuse/kg_io.hpp"
#include "dtifuse/metrics.hpp"
#include "dtifuse/pipeline.hpp"
#include "dtifuse/report.hpp"
#include "dtifuse/weightfit.hpp"

namespace {

using namespace dtifuse;

enum Exit : int { kOk = 0, kInvalidInput = 1, kResourceError = 2, kAllFailed = 3 };

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PipelineError: return kAllFailed;
    case ErrorKind::BatchSetupError:
    case ErrorKind::CacheError:
    case ErrorKind::IngestError:
    case ErrorKind::RetrievalError:
    case ErrorKind::PredictorUnavailable: return kResourceError;
    default: return kInvalidInput;
  }
}

struct ScoringFlags {
  std::string config;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::string kg;
  std::string corpus;
  std::string search_backend = "corpus";
  std::string search_url;
  std::string drugs;
  std::string targets;
  std::string predictor = "surrogate";
  std::string remote_url;
  bool concurrent = false;
  bool no_durations = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config, "key = value configuration file");
    cmd->add_option("--alpha", alpha, "weight of the ML score");
    cmd->add_option("--beta", beta, "weight of the search score");
    cmd->add_option("--kg", kg, "knowledge graph cache (from build-kg)");
    cmd->add_option("--corpus", corpus, "search corpus JSON");
    cmd->add_option("--search-backend", search_backend)->check(CLI::IsMember({"corpus", "http"}));
    cmd->add_option("--search-url", search_url, "base URL for the http search backend");
    cmd->add_option("--drugs", drugs, "drug table: name<TAB>smiles");
    cmd->add_option("--targets", targets, "target table: FASTA or name<TAB>sequence");
    cmd->add_option("--predictor", predictor)->check(CLI::IsMember({"surrogate", "remote"}));
    cmd->add_option("--remote-url", remote_url, "model server base URL");
    cmd->add_flag("--concurrent", concurrent, "run the three scorers on separate threads");
    cmd->add_flag("--no-durations", no_durations, "omit step durations from the trace");
  }

  FusionConfig fusion_config() const {
    FusionConfig cfg;
    if (!config.empty()) cfg = load_config_file(config, cfg);
    apply_env_overrides(cfg);
    if (alpha) cfg.alpha = *alpha;
    if (beta) cfg.beta = *beta;
    return cfg;
  }

  ResourceOptions resource_options(const FusionConfig& cfg) const {
    ResourceOptions o;
    if (!kg.empty()) o.kg_cache = kg;
    if (!corpus.empty()) o.corpus = corpus;
    o.search_backend = search_backend == "http" ? SearchBackend::Http : SearchBackend::Corpus;
    o.search_url = search_url;
    if (!drugs.empty()) o.drug_table = drugs;
    if (!targets.empty()) o.target_table = targets;
    o.predictor = predictor;
    o.remote_url = remote_url;
    o.config = cfg;
    return o;
  }
};

double parse_or_nan(std::string_view cell) {
  cell = trim(cell);
  double v = 0.0;
  const auto* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  return (ec == std::errc{} && ptr == end && !cell.empty()) ? v : std::nan("");
}

// drug<TAB>target[<TAB>alpha<TAB>beta]; optional header starting with "drug".
std::vector<Query> read_queries(std::istream& in, const FusionConfig& cfg) {
  std::vector<Query> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (trim(view).empty() || trim(view).front() == '#') continue;
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
      const auto tab = view.find('\t', start);
      cells.push_back(view.substr(start, tab == std::string_view::npos ? tab : tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (first && fold_case(trim(cells[0])) == "drug") {
      first = false;
      continue;
    }
    first = false;
    Query q;
    q.drug = std::string(trim(cells[0]));
    q.target = cells.size() > 1 ? std::string(trim(cells[1])) : std::string{};
    q.alpha = cells.size() > 2 ? parse_or_nan(cells[2]) : cfg.alpha;
    q.beta = cells.size() > 3 ? parse_or_nan(cells[3]) : cfg.beta;
    out.push_back(std::move(q));
  }
  return out;
}

int fail(const Error& e) {
  std::cerr << "dtifuse: " << to_string(e.kind()) << ": " << e.what() << "\n";
  return exit_code_for(e.kind());
}

int cmd_score(const ScoringFlags& flags, const std::string& drug, const std::string& target) {
  const auto cfg = flags.fusion_config();
  const Coordinator coordinator(load_resources(flags.resource_options(cfg)));
  RunOptions run;
  run.concurrent = flags.concurrent;
  const auto report = coordinator.run_query({drug, target, cfg.alpha, cfg.beta}, run);
  std::cout << to_json(report, !flags.no_durations).dump(2) << "\n";
  return kOk;
}

int cmd_batch(const ScoringFlags& flags, const std::string& input) {
  const auto cfg = flags.fusion_config();
  std::ifstream in(input);
  if (!in) throw Error(ErrorKind::BatchSetupError, "cannot open query file " + input);
  const auto queries = read_queries(in, cfg);
  const Coordinator coordinator(load_resources(flags.resource_options(cfg)));
  for (const auto& r : coordinator.run_batch(queries)) {
    std::cout << to_json(r, !flags.no_durations).dump() << "\n";
  }
  return kOk;
}

int cmd_build_kg(const std::vector<std::string>& edges,
                 const std::vector<std::pair<Provenance, std::vector<std::string>>>& dumps,
                 const std::string& out) {
  IngestReport report;
  std::vector<InteractionEdge> all;
  for (const auto& path : edges) {
    auto part = read_edge_list_file(path, report);
    all.insert(all.end(), part.begin(), part.end());
  }
  for (const auto& [prov, paths] : dumps) {
    for (const auto& path : paths) {
      std::ifstream in(path);
      if (!in) throw Error(ErrorKind::IngestError, "cannot open dump " + path);
      auto part = adapt_dump(in, prov, report);
      all.insert(all.end(), part.begin(), part.end());
    }
  }
  auto built = build_graph(all);
  save_graph_file(built.graph, out);
  const auto& r = built.report;
  nlohmann::json j{{"nodes", built.graph.node_count()},
                   {"edges", built.graph.edge_count()},
                   {"rows", r.rows},
                   {"malformed", report.malformed + r.malformed},
                   {"self_loops", r.self_loops},
                   {"duplicates", r.duplicates},
                   {"out", out}};
  auto diagnostics = report.diagnostics;
  diagnostics.insert(diagnostics.end(), r.diagnostics.begin(), r.diagnostics.end());
  if (!diagnostics.empty()) j["diagnostics"] = diagnostics;
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int cmd_fit(const std::string& input, double tolerance, int max_iterations) {
  std::ifstream in(input);
  if (!in) throw Error(ErrorKind::IngestError, "cannot open fit table " + input);
  const auto problem = read_fit_table(in);
  const auto result = fit_weights(problem, {tolerance, max_iterations});
  auto j = to_json(result);
  j["rows"] = problem.rows();
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int cmd_eval(const std::string& pred, const std::string& truth) {
  std::ifstream p(pred);
  if (!p) throw Error(ErrorKind::IngestError, "cannot open " + pred);
  std::ifstream t(truth);
  if (!t) throw Error(ErrorKind::IngestError, "cannot open " + truth);
  auto joined = join_on_id(p, t);
  for (const auto& id : joined.unmatched) std::cerr << "dtifuse: unmatched id dropped: " << id << "\n";
  const auto series = PairedSeries::make(joined.predicted, joined.truth);
  nlohmann::json j{{"matched", series.size()},
                   {"unmatched", joined.unmatched},
                   {"mse", mse(series)},
                   {"r2", r2(series)},
                   {"correlation", correlation(series)}};
  std::cout << j.dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-source drug-target interaction scoring"};
  app.require_subcommand(1);

  ScoringFlags score_flags;
  std::string drug, target;
  auto* score = app.add_subcommand("score", "score one drug-target pair");
  score->add_option("--drug", drug)->required();
  score->add_option("--target", target)->required();
  score_flags.attach(score);

  ScoringFlags batch_flags;
  std::string batch_input;
  auto* batch = app.add_subcommand("batch", "score drug<TAB>target[<TAB>alpha<TAB>beta] rows");
  batch->add_option("--input", batch_input)->required();
  batch_flags.attach(batch);

  std::vector<std::string> edge_files, dgidb, ctd, stitch, drugbank;
  std::string kg_out;
  auto* build = app.add_subcommand("build-kg", "build the knowledge graph cache");
  build->add_option("--edges", edge_files, "normalized source<TAB>dest<TAB>provenance files");
  build->add_option("--dgidb", dgidb, "raw DGIdb interactions.tsv");
  build->add_option("--ctd", ctd, "raw CTD chem_gene_ixns.tsv");
  build->add_option("--stitch", stitch, "raw STITCH chemical_protein links");
  build->add_option("--drugbank", drugbank, "raw DrugBank target links CSV");
  build->add_option("--out", kg_out)->required();

  std::string fit_input;
  FitOptions fit_opts;
  auto* fit = app.add_subcommand("fit-weights", "fit fusion weights on the probability simplex");
  fit->add_option("--input", fit_input)->required();
  fit->add_option("--tolerance", fit_opts.tolerance)->check(CLI::PositiveNumber);
  fit->add_option("--max-iterations", fit_opts.max_iterations)->check(CLI::PositiveNumber);

  std::string pred_file, truth_file;
  auto* eval = app.add_subcommand("eval", "MSE, R2 and Pearson correlation of id-aligned tables");
  eval->add_option("--pred", pred_file)->required();
  eval->add_option("--truth", truth_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*score) return cmd_score(score_flags, drug, target);
    if (*batch) return cmd_batch(batch_flags, batch_input);
    if (*build) {
      return cmd_build_kg(edge_files,
                          {{Provenance::DGIdb, dgidb},
                           {Provenance::CTD, ctd},
                           {Provenance::STITCH, stitch},
                           {Provenance::DrugBank, drugbank}},
                          kg_out);
    }
    if (*fit) return cmd_fit(fit_input, fit_opts.tolerance, fit_opts.max_iterations);
    if (*eval) return cmd_eval(pred_file, truth_file);
  } catch (const Error& e) {
    return fail(e);
  } catch (const std::exception& e) {
    std::cerr << "dtifuse: " << e.what() << "\n";
    return kResourceError;
  }
  return kInvalidInput;
}
