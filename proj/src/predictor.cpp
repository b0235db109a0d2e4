#include "dtifuse/predictor.hpp"

#include <cmath>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace dtifuse {

std::string_view to_string(ScoreSource s) {
  return s == ScoreSource::Surrogate ? "surrogate" : "remote";
}

void PredictionRequest::validate() const {
  if (trim(drug.structure).empty()) {
    throw Error(ErrorKind::InvalidInput, "drug '" + drug.id.raw() + "' has no structure");
  }
  if (trim(target.sequence).empty()) {
    throw Error(ErrorKind::InvalidInput, "target '" + target.id.raw() + "' has no sequence");
  }
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

MlScore SurrogatePredictor::predict(const PredictionRequest& req) const {
  req.validate();
  auto h = fnv1a64(req.drug.structure);
  h = fnv1a64("\x1f", h);
  h = fnv1a64(req.target.sequence, h);
  // top 53 bits -> [0, 1), exactly representable
  const double unit = static_cast<double>(h >> 11) * 0x1.0p-53;
  return {kLow + (kHigh - kLow) * unit, ScoreSource::Surrogate};
}

double parse_prediction_body(std::string_view body) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorKind::MalformedPrediction, "prediction response is not JSON");
  }
  if (!doc.is_object() || !doc.contains("ml_dti_score")) {
    throw Error(ErrorKind::MalformedPrediction, "prediction response lacks ml_dti_score");
  }
  const auto& v = doc.at("ml_dti_score");
  if (!v.is_number()) {
    throw Error(ErrorKind::MalformedPrediction, "ml_dti_score is not a number");
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw Error(ErrorKind::MalformedPrediction, "ml_dti_score is not finite");
  return x;
}

RemotePredictor::RemotePredictor(std::string base_url, RemoteOptions options)
    : base_url_(std::move(base_url)), options_(options) {}

MlScore RemotePredictor::predict(const PredictionRequest& req) const {
  req.validate();
  const nlohmann::json body{{"drug_name", req.drug.id.raw()},
                            {"smiles", req.drug.structure},
                            {"target_name", req.target.id.raw()},
                            {"sequence", req.target.sequence}};
  const auto payload = body.dump();

  httplib::Client client(base_url_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(options_.timeout);
  const auto usecs =
      std::chrono::duration_cast<std::chrono::microseconds>(options_.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  std::string last_error;
  for (int attempt = 0; attempt <= options_.retries; ++attempt) {
    const auto res = client.Post("/predict", payload, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    switch (res->status) {
      case 200: return {parse_prediction_body(res->body), ScoreSource::Remote};
      case 404:
        throw Error(ErrorKind::PredictorUnavailable, "model server reports unknown_model");
      case 422:
        throw Error(ErrorKind::InvalidInput, "model server rejected the request as invalid_input");
      default:
        last_error = "HTTP " + std::to_string(res->status);
        if (res->status < 500) {
          throw Error(ErrorKind::PredictorUnavailable, "model server returned " + last_error);
        }
    }
  }
  throw Error(ErrorKind::PredictorUnavailable, "model server unreachable at " + base_url_ + ": " + last_error);
}

}  // namespace dtifuse
