#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dtifuse/error.hpp"

namespace dtifuse {

std::string_view trim(std::string_view text);

// ASCII case folding. Bytes outside ASCII pass through unchanged.
std::string fold_case(std::string_view text);

/// A drug or target identifier. `normalized` is the trimmed, case-folded
/// form used for every lookup; `raw` is kept for display and queries.
class EntityId {
 public:
  /// Throws Error{InvalidEntity} when `raw` is empty after trimming.
  static EntityId from(std::string_view raw);

  const std::string& raw() const noexcept { return raw_; }
  const std::string& normalized() const noexcept { return normalized_; }

  friend bool operator==(const EntityId& a, const EntityId& b) noexcept {
    return a.normalized_ == b.normalized_;
  }

 private:
  EntityId(std::string raw, std::string normalized)
      : raw_(std::move(raw)), normalized_(std::move(normalized)) {}

  std::string raw_;
  std::string normalized_;
};

EntityId normalize_entity(std::string_view raw);

struct DrugRecord {
  EntityId id;
  std::string structure;  // SMILES
};

struct TargetRecord {
  EntityId id;
  std::string sequence;  // upper-case amino-acid letters
};

const std::vector<std::string>& default_positive_keywords();
const std::vector<std::string>& default_strong_keywords();

struct FusionConfig {
  double alpha = 0.3;
  double beta = 0.3;
  std::size_t search_result_count = 10;
  std::vector<std::string> positive_keywords = default_positive_keywords();
  std::vector<std::string> strong_keywords = default_strong_keywords();

  /// Throws Error{InvalidConfig} unless 0 < alpha < 1, 0 < beta < 1,
  /// alpha + beta < 1, the result count is positive and both keyword
  /// lists are non-empty.
  void validate() const;
};

bool weights_in_open_region(double alpha, double beta) noexcept;

/// Fusion weights in the fixed order (ml, search, kg). Always a point on
/// the probability simplex.
class WeightVector {
 public:
  static constexpr double kSumTolerance = 1e-9;

  /// Throws Error{InvalidWeights} on negative or non-finite components or
  /// a sum farther than kSumTolerance from 1.
  static WeightVector make(double ml, double search, double kg);
  static WeightVector from_alpha_beta(double alpha, double beta);

  double ml() const noexcept { return w_[0]; }
  double search() const noexcept { return w_[1]; }
  double kg() const noexcept { return w_[2]; }
  const std::array<double, 3>& values() const noexcept { return w_; }

 private:
  explicit WeightVector(std::array<double, 3> w) : w_(w) {}
  std::array<double, 3> w_;
};

struct ScoreBundle {
  double ml = 0.0;
  double search = 0.0;
  double kg = 0.0;
  double merged = 0.0;
  WeightVector weights = WeightVector::from_alpha_beta(0.3, 0.3);
};

}  // namespace dtifuse
