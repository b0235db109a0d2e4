#include "dtifuse/weightfit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "dtifuse/kernels.hpp"

namespace dtifuse {
namespace {

// Faces of the 2-simplex as support bitmasks: vertices, then edges, then
// the interior. Vertices are always feasible, so any budget >= 1 leaves a
// valid incumbent.
constexpr std::array<unsigned, 7> kFaces = {0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111};

// Minimizes w^T G w - 2 c^T w over {sum w_S = 1, w_i = 0 off S} via the
// KKT system. Singular faces get the minimum-norm solution; if that point
// is infeasible, an optimal point exists on a smaller face instead.
std::optional<std::array<double, 3>> solve_face(const Gram& gm, unsigned face) {
  std::array<int, 3> idx{};
  int k = 0;
  for (int i = 0; i < 3; ++i) {
    if (face & (1u << i)) idx[k++] = i;
  }
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
  Eigen::VectorXd rhs(k + 1);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) kkt(r, c) = 2.0 * gm.g[3 * idx[r] + idx[c]];
    kkt(r, k) = 1.0;
    kkt(k, r) = 1.0;
    rhs(r) = 2.0 * gm.c[idx[r]];
  }
  rhs(k) = 1.0;
  const Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);

  std::array<double, 3> w{0.0, 0.0, 0.0};
  constexpr double kFeasTol = 1e-12;
  double sum = 0.0;
  for (int r = 0; r < k; ++r) {
    const double x = sol(r);
    if (!std::isfinite(x) || x < -kFeasTol) return std::nullopt;
    w[idx[r]] = std::max(0.0, x);
    sum += w[idx[r]];
  }
  if (!(sum > 0.0)) return std::nullopt;
  for (double& x : w) x /= sum;
  return w;
}

// Upper bound on f(w) - f* for the convex objective on the simplex:
// max gradient over the support minus min gradient overall.
double gap_bound(const Gram& gm, const std::array<double, 3>& w) {
  std::array<double, 3> grad{};
  for (int i = 0; i < 3; ++i) {
    double gw = 0.0;
    for (int j = 0; j < 3; ++j) gw += gm.g[3 * i + j] * w[j];
    grad[i] = 2.0 * (gw - gm.c[i]);
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi_support = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    lo = std::min(lo, grad[i]);
    if (w[i] > 0.0) hi_support = std::max(hi_support, grad[i]);
  }
  return hi_support - lo;
}

double parse_cell(std::string_view cell, std::size_t lineno) {
  const auto body = trim(cell);
  double v = 0.0;
  const auto* end = body.data() + body.size();
  const auto [ptr, ec] = std::from_chars(body.data(), end, v);
  if (body.empty() || ec != std::errc{} || ptr != end) {
    throw Error(ErrorKind::InvalidProblem,
                "line " + std::to_string(lineno) + ": not a number: '" + std::string(cell) + "'");
  }
  return v;
}

}  // namespace

void FitProblem::validate() const {
  if (truth.empty()) throw Error(ErrorKind::InvalidProblem, "fit problem has no rows");
  if (scores.size() != truth.size()) {
    throw Error(ErrorKind::InvalidProblem, "score rows and ground truth differ in length");
  }
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool finite = std::isfinite(truth[i]) &&
                        std::all_of(scores[i].begin(), scores[i].end(),
                                    [](double x) { return std::isfinite(x); });
    if (!finite) {
      throw Error(ErrorKind::InvalidProblem, "row " + std::to_string(i) + " has a non-finite entry");
    }
  }
}

double fit_objective(const FitProblem& p, const WeightVector& w) {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    const auto& a = p.scores[i];
    const double r = w.ml() * a[0] + w.search() * a[1] + w.kg() * a[2] - p.truth[i];
    acc += r * r;
  }
  return acc;
}

FitResult fit_weights(const FitProblem& p, const FitOptions& options) {
  p.validate();
  if (!(options.tolerance > 0.0)) {
    throw Error(ErrorKind::InvalidProblem, "tolerance must be positive");
  }
  if (options.max_iterations < 1) {
    throw Error(ErrorKind::InvalidProblem, "max_iterations must be positive");
  }

  const Gram gm = kernels::gram(p);

  FitResult best;
  best.objective = std::numeric_limits<double>::infinity();
  bool have = false;
  bool certified = false;
  int faces_done = 0;

  for (unsigned face : kFaces) {
    if (best.iterations >= options.max_iterations) break;
    ++best.iterations;
    ++faces_done;
    const auto w = solve_face(gm, face);
    if (!w) continue;
    const auto wv = WeightVector::make((*w)[0], (*w)[1], (*w)[2]);
    const double obj = fit_objective(p, wv);
    if (!have || obj < best.objective) {
      best.weights = wv;
      best.objective = obj;
      have = true;
    }
    if (gap_bound(gm, best.weights.values()) <= options.tolerance) {
      certified = true;
      break;
    }
  }
  // every face examined means the minimum over all of them is global
  best.converged = certified || faces_done == static_cast<int>(kFaces.size());
  return best;
}

FitProblem read_fit_table(std::istream& in) {
  static constexpr std::array<std::string_view, 4> kHeader = {"ml_score", "search_score",
                                                              "kg_score", "ground_truth"};
  FitProblem p;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (trim(view).empty() || trim(view).front() == '#') continue;
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
      const auto tab = view.find('\t', start);
      cells.push_back(view.substr(start, tab == std::string_view::npos ? std::string_view::npos
                                                                      : tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (cells.size() != 4) {
      throw Error(ErrorKind::InvalidProblem,
                  "line " + std::to_string(lineno) + ": expected 4 tab-separated columns");
    }
    if (!header_seen) {
      for (std::size_t i = 0; i < 4; ++i) {
        if (fold_case(trim(cells[i])) != kHeader[i]) {
          throw Error(ErrorKind::InvalidProblem,
                      "line " + std::to_string(lineno) +
                          ": header must be ml_score, search_score, kg_score, ground_truth");
        }
      }
      header_seen = true;
      continue;
    }
    p.scores.push_back({parse_cell(cells[0], lineno), parse_cell(cells[1], lineno),
                        parse_cell(cells[2], lineno)});
    p.truth.push_back(parse_cell(cells[3], lineno));
  }
  if (!header_seen) throw Error(ErrorKind::InvalidProblem, "fit table is empty (header required)");
  p.validate();
  return p;
}

}  // namespace dtifuse
