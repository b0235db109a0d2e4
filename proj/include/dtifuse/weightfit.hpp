#pragma once

#include <array>
#include <istream>
#include <vector>

#include "dtifuse/core.hpp"

namespace dtifuse {

/// m rows of agent scores in (ml, search, kg) order and the matching
/// ground-truth values.
struct FitProblem {
  std::vector<std::array<double, 3>> scores;
  std::vector<double> truth;

  std::size_t rows() const noexcept { return truth.size(); }
  /// Throws Error{InvalidProblem}: empty, ragged or non-finite.
  void validate() const;
};

struct FitResult {
  WeightVector weights = WeightVector::from_alpha_beta(0.3, 0.3);
  double objective = 0.0;  // ||A w - b||^2
  int iterations = 0;
  bool converged = false;
};

struct FitOptions {
  double tolerance = 1e-8;
  int max_iterations = 10'000;
};

/// Normal-equation data for the fit: G = A^T A, c = A^T b, bb = b^T b.
struct Gram {
  std::array<double, 9> g{};  // row-major 3x3
  std::array<double, 3> c{};
  double bb = 0.0;
};

/// argmin ||A w - b||^2 over the probability simplex.
///
/// Active-set search over the seven faces of the 2-simplex: each face's
/// equality-constrained least-squares problem is solved through its KKT
/// system, infeasible face solutions are discarded, and the search stops
/// as soon as the simplex KKT gap bound of the incumbent (largest minus
/// smallest gradient entry on the support, smallest overall) bounds
/// f(w) - f* by `tolerance`. One face solve is one iteration. If the budget runs out first the best feasible point seen
/// so far is returned with converged = false.
FitResult fit_weights(const FitProblem& p, const FitOptions& options = {});

double fit_objective(const FitProblem& p, const WeightVector& w);

/// Reads `ml_score search_score kg_score ground_truth` TSV with a
/// mandatory header. Throws Error{InvalidProblem} with the line number.
FitProblem read_fit_table(std::istream& in);

}  // namespace dtifuse
