#pragma once

// Test-only oracles and fixtures. Nothing here calls into the code paths
// it is used to check.

#include <array>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "dtifuse/kg.hpp"
#include "dtifuse/weightfit.hpp"

namespace dtifuse::testing {

inline std::string data_path(const std::string& name) {
  return std::string(DTIFUSE_TEST_DATA) + "/" + name;
}

// Random simple graph on `n` nodes named n0..n{n-1}; each unordered pair
// is an edge with probability `density`.
struct RandomGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<InteractionEdge> as_edges() const {
    std::vector<InteractionEdge> out;
    for (auto [a, b] : edges) out.push_back({"n" + std::to_string(a), "n" + std::to_string(b)});
    return out;
  }
};

inline RandomGraph random_graph(std::mt19937_64& rng, int max_nodes) {
  std::uniform_int_distribution<int> nodes(2, max_nodes);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RandomGraph g;
  g.n = nodes(rng);
  const double density = unit(rng) * 0.6;
  for (int a = 0; a < g.n; ++a) {
    for (int b = a + 1; b < g.n; ++b) {
      if (unit(rng) < density) g.edges.emplace_back(a, b);
    }
  }
  return g;
}

// All-pairs hop distance by Floyd-Warshall over the raw edge list;
// -1 for unreachable. Nodes without edges never enter the built graph,
// which the caller accounts for.
inline std::vector<std::vector<int>> floyd_warshall(const RandomGraph& g) {
  constexpr int kInf = std::numeric_limits<int>::max() / 4;
  std::vector<std::vector<int>> d(g.n, std::vector<int>(g.n, kInf));
  for (int i = 0; i < g.n; ++i) d[i][i] = 0;
  for (auto [a, b] : g.edges) d[a][b] = d[b][a] = 1;
  for (int k = 0; k < g.n; ++k)
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  for (auto& row : d)
    for (auto& x : row)
      if (x >= kInf) x = -1;
  return d;
}

// round(T/M, 2), ties away from zero, by comparing exact rationals
// |100T/M - k| for every k in 0..100 (cross-multiplied, no division).
inline double rational_round_hundredths(std::int64_t t, std::int64_t m) {
  if (m == 0) return 0.0;
  std::int64_t best = 0;
  std::int64_t best_num = -1;  // |100T - kM|, distance scaled by M
  for (std::int64_t k = 0; k <= 100; ++k) {
    const std::int64_t num = std::llabs(100 * t - k * m);
    if (best_num < 0 || num < best_num || (num == best_num && k > best)) {
      best = k;
      best_num = num;
    }
  }
  return static_cast<double>(best) / 100.0;
}

inline double objective_at(const FitProblem& p, double w0, double w1, double w2) {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    const auto& a = p.scores[i];
    const double r = w0 * a[0] + w1 * a[1] + w2 * a[2] - p.truth[i];
    acc += r * r;
  }
  return acc;
}

// Smallest objective over the 0.01-step grid on the 2-simplex.
inline double simplex_grid_minimum(const FitProblem& p, int steps = 100) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; i + j <= steps; ++j) {
      const int k = steps - i - j;
      best = std::min(best, objective_at(p, i / double(steps), j / double(steps), k / double(steps)));
    }
  }
  return best;
}

inline FitProblem random_fit_problem(std::mt19937_64& rng, int min_rows, int max_rows) {
  std::uniform_int_distribution<int> rows(min_rows, max_rows);
  std::uniform_real_distribution<double> val(0.0, 10.0);
  FitProblem p;
  const int m = rows(rng);
  for (int i = 0; i < m; ++i) {
    p.scores.push_back({val(rng), val(rng), val(rng)});
    p.truth.push_back(val(rng));
  }
  return p;
}

// Local HTTP server on an ephemeral port, torn down on destruction.
class StubServer {
 public:
  using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

  explicit StubServer(Handler predict) {
    server_.Post("/predict", [predict](const httplib::Request& req, httplib::Response& res) {
      predict(req, res);
    });
    server_.Get("/health", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(R"({"status":"ok","model":"stub"})", "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  void on_get(const std::string& path, Handler h) { server_.Get(path, std::move(h)); }

  ~StubServer() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

// Sidecar stand-in honoring the wire contract: 422 on bad bodies,
// otherwise {"ml_dti_score": score}.
inline StubServer::Handler sidecar_handler(double score) {
  return [score](const httplib::Request& req, httplib::Response& res) {
    auto bad = [&res] {
      res.status = 422;
      res.set_content(R"({"error":"invalid_input"})", "application/json");
    };
    try {
      const auto body = nlohmann::json::parse(req.body);
      for (const char* key : {"drug_name", "smiles", "target_name", "sequence"}) {
        if (!body.contains(key) || !body[key].is_string() || body[key].get<std::string>().empty()) {
          return bad();
        }
      }
    } catch (...) {
      return bad();
    }
    res.set_content(nlohmann::json{{"ml_dti_score", score}}.dump(), "application/json");
  };
}

}  // namespace dtifuse::testing
