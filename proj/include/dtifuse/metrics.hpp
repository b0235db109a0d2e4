#pragma once

#include <istream>
#include <span>
#include <string>
#include <vector>

namespace dtifuse {

class PairedSeries {
 public:
  /// Throws Error{InvalidSeries} on length mismatch, fewer than two
  /// points, or non-finite values.
  static PairedSeries make(std::vector<double> predicted, std::vector<double> truth);

  std::span<const double> predicted() const noexcept { return predicted_; }
  std::span<const double> truth() const noexcept { return truth_; }
  std::size_t size() const noexcept { return truth_.size(); }

 private:
  PairedSeries(std::vector<double> p, std::vector<double> t)
      : predicted_(std::move(p)), truth_(std::move(t)) {}
  std::vector<double> predicted_;
  std::vector<double> truth_;
};

double mse(const PairedSeries& s);
/// 1 - SS_res / SS_tot. Throws Error{DegenerateSeries} on constant truth.
double r2(const PairedSeries& s);
/// Pearson. Throws Error{DegenerateSeries} if either side is constant.
double correlation(const PairedSeries& s);

// One-pass streaming versions (Welford-style updates of means and
// co-moments). Same contracts as the two-pass functions above.
namespace single_pass {
double mse(const PairedSeries& s);
double r2(const PairedSeries& s);
double correlation(const PairedSeries& s);
}  // namespace single_pass

struct JoinedSeries {
  std::vector<std::string> ids;
  std::vector<double> predicted;
  std::vector<double> truth;
  std::vector<std::string> unmatched;  // ids present on only one side
};

/// Joins two `id<TAB>value` tables on id, in the order of the prediction
/// table. A header row is skipped when its value cell does not parse.
JoinedSeries join_on_id(std::istream& predicted, std::istream& truth);

}  // namespace dtifuse
