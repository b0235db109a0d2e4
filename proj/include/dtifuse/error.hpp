#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dtifuse {

enum class ErrorKind {
  InvalidEntity,
  InvalidConfig,
  InvalidWeights,
  SameEntity,
  IngestError,
  CacheError,
  RetrievalError,
  UnknownEntity,
  PredictorUnavailable,
  MalformedPrediction,
  InvalidInput,
  InvalidProblem,
  InvalidSeries,
  DegenerateSeries,
  InvalidQuery,
  PipelineError,
  BatchSetupError,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers switch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dtifuse
