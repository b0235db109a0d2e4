#pragma once

#include <chrono>
#include <string>

#include "dtifuse/core.hpp"

namespace dtifuse {

enum class ScoreSource { Surrogate, Remote };
std::string_view to_string(ScoreSource s);

struct MlScore {
  double value = 0.0;
  ScoreSource source = ScoreSource::Surrogate;
};

struct PredictionRequest {
  DrugRecord drug;
  TargetRecord target;

  /// Throws Error{InvalidInput} on an empty structure or sequence.
  void validate() const;
};

class Predictor {
 public:
  virtual ~Predictor() = default;
  virtual MlScore predict(const PredictionRequest& req) const = 0;
  virtual std::string name() const = 0;
};

/// Deterministic stand-in: FNV-1a 64 over structure, a 0x1f separator and
/// sequence, mapped to [4, 10). Carries no chemistry.
class SurrogatePredictor final : public Predictor {
 public:
  static constexpr double kLow = 4.0;
  static constexpr double kHigh = 10.0;

  MlScore predict(const PredictionRequest& req) const override;
  std::string name() const override { return "surrogate"; }
};

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

struct RemoteOptions {
  std::chrono::milliseconds timeout{30'000};
  int retries = 1;
};

/// Client for the model-serving sidecar.
///
///   POST <base>/predict
///   {"drug_name": str, "smiles": str, "target_name": str, "sequence": str}
///   200 {"ml_dti_score": number} | 404 {"error": "unknown_model"}
///                                | 422 {"error": "invalid_input"}
///
/// Transport failures (after retries) and 404 raise PredictorUnavailable,
/// 422 raises InvalidInput, anything non-numeric or non-finite raises
/// MalformedPrediction.
class RemotePredictor final : public Predictor {
 public:
  explicit RemotePredictor(std::string base_url, RemoteOptions options = {});

  MlScore predict(const PredictionRequest& req) const override;
  std::string name() const override { return "remote"; }

 private:
  std::string base_url_;
  RemoteOptions options_;
};

/// Parses a 200 response body. Throws Error{MalformedPrediction}.
double parse_prediction_body(std::string_view body);

}  // namespace dtifuse
