#include "dtifuse/core.hpp"

#include <cmath>

namespace dtifuse {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidEntity: return "InvalidEntity";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::InvalidWeights: return "InvalidWeights";
    case ErrorKind::SameEntity: return "SameEntity";
    case ErrorKind::IngestError: return "IngestError";
    case ErrorKind::CacheError: return "CacheError";
    case ErrorKind::RetrievalError: return "RetrievalError";
    case ErrorKind::UnknownEntity: return "UnknownEntity";
    case ErrorKind::PredictorUnavailable: return "PredictorUnavailable";
    case ErrorKind::MalformedPrediction: return "MalformedPrediction";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::InvalidProblem: return "InvalidProblem";
    case ErrorKind::InvalidSeries: return "InvalidSeries";
    case ErrorKind::DegenerateSeries: return "DegenerateSeries";
    case ErrorKind::InvalidQuery: return "InvalidQuery";
    case ErrorKind::PipelineError: return "PipelineError";
    case ErrorKind::BatchSetupError: return "BatchSetupError";
  }
  return "Unknown";
}

std::string_view trim(std::string_view text) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto first = text.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(ws);
  return text.substr(first, last - first + 1);
}

std::string fold_case(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

EntityId EntityId::from(std::string_view raw) {
  const auto body = trim(raw);
  if (body.empty()) {
    throw Error(ErrorKind::InvalidEntity, "entity name is empty");
  }
  return EntityId(std::string(body), fold_case(body));
}

EntityId normalize_entity(std::string_view raw) { return EntityId::from(raw); }

const std::vector<std::string>& default_positive_keywords() {
  static const std::vector<std::string> kw{"interacts", "binds", "activates", "inhibits",
                                           "modulates"};
  return kw;
}

const std::vector<std::string>& default_strong_keywords() {
  static const std::vector<std::string> kw{"strong", "significant", "potent", "effective"};
  return kw;
}

bool weights_in_open_region(double alpha, double beta) noexcept {
  return std::isfinite(alpha) && std::isfinite(beta) && alpha > 0.0 && alpha < 1.0 &&
         beta > 0.0 && beta < 1.0 && alpha + beta < 1.0;
}

void FusionConfig::validate() const {
  if (!weights_in_open_region(alpha, beta)) {
    throw Error(ErrorKind::InvalidConfig,
                "alpha and beta must satisfy 0 < alpha < 1, 0 < beta < 1, alpha + beta < 1");
  }
  if (search_result_count == 0) {
    throw Error(ErrorKind::InvalidConfig, "search_result_count must be positive");
  }
  auto check_list = [](const std::vector<std::string>& list, const char* what) {
    if (list.empty()) {
      throw Error(ErrorKind::InvalidConfig, std::string(what) + " must not be empty");
    }
    for (const auto& kw : list) {
      if (trim(kw).empty()) {
        throw Error(ErrorKind::InvalidConfig, std::string(what) + " contains an empty keyword");
      }
    }
  };
  check_list(positive_keywords, "positive_keywords");
  check_list(strong_keywords, "strong_keywords");
}

WeightVector WeightVector::make(double ml, double search, double kg) {
  const std::array<double, 3> w{ml, search, kg};
  for (double x : w) {
    if (!std::isfinite(x) || x < 0.0) {
      throw Error(ErrorKind::InvalidWeights, "weights must be finite and non-negative");
    }
  }
  if (std::abs(ml + search + kg - 1.0) > kSumTolerance) {
    throw Error(ErrorKind::InvalidWeights, "weights must sum to 1");
  }
  return WeightVector(w);
}

WeightVector WeightVector::from_alpha_beta(double alpha, double beta) {
  if (!weights_in_open_region(alpha, beta)) {
    throw Error(ErrorKind::InvalidWeights,
                "alpha and beta must satisfy 0 < alpha < 1, 0 < beta < 1, alpha + beta < 1");
  }
  return WeightVector({alpha, beta, 1.0 - alpha - beta});
}

}  // namespace dtifuse
