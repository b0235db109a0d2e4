#include "dtifuse/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <unordered_map>

#include "dtifuse/core.hpp"

namespace dtifuse {
namespace {

bool constant(std::span<const double> xs) {
  return std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); });
}

double mean(std::span<const double> xs) {
  double acc = 0.0;
  for (double x : xs) acc += x;
  return acc / static_cast<double>(xs.size());
}

void require_truth_variance(const PairedSeries& s) {
  if (constant(s.truth())) throw Error(ErrorKind::DegenerateSeries, "truth series has zero variance");
}

void require_both_variance(const PairedSeries& s) {
  require_truth_variance(s);
  if (constant(s.predicted())) {
    throw Error(ErrorKind::DegenerateSeries, "predicted series has zero variance");
  }
}

struct Moments {
  double n = 0.0;
  double mean_p = 0.0;
  double mean_t = 0.0;
  double m2_p = 0.0;
  double m2_t = 0.0;
  double co = 0.0;
  double mean_sq_err = 0.0;
};

Moments stream(const PairedSeries& s) {
  Moments m;
  const auto p = s.predicted();
  const auto t = s.truth();
  for (std::size_t i = 0; i < s.size(); ++i) {
    m.n += 1.0;
    const double dp = p[i] - m.mean_p;
    const double dt = t[i] - m.mean_t;
    m.mean_p += dp / m.n;
    m.mean_t += dt / m.n;
    m.m2_p += dp * (p[i] - m.mean_p);
    m.m2_t += dt * (t[i] - m.mean_t);
    m.co += dp * (t[i] - m.mean_t);
    const double e = p[i] - t[i];
    m.mean_sq_err += (e * e - m.mean_sq_err) / m.n;
  }
  return m;
}

std::optional<std::pair<std::string, double>> parse_row(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  if (trim(line).empty() || trim(line).front() == '#') return std::nullopt;
  const auto tab = line.find('\t');
  if (tab == std::string_view::npos) {
    throw Error(ErrorKind::InvalidSeries, "expected id<TAB>value, got '" + std::string(line) + "'");
  }
  const auto id = trim(line.substr(0, tab));
  const auto cell = trim(line.substr(tab + 1));
  double v = 0.0;
  const auto* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (cell.empty() || ec != std::errc{} || ptr != end) {
    return std::make_pair(std::string(id), std::nan(""));
  }
  return std::make_pair(std::string(id), v);
}

std::vector<std::pair<std::string, double>> read_table(std::istream& in) {
  std::vector<std::pair<std::string, double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    auto row = parse_row(line);
    if (!row) continue;
    if (std::isnan(row->second)) {
      if (first) {  // header
        first = false;
        continue;
      }
      throw Error(ErrorKind::InvalidSeries, "value for id '" + row->first + "' is not a number");
    }
    first = false;
    rows.push_back(std::move(*row));
  }
  return rows;
}

}  // namespace

PairedSeries PairedSeries::make(std::vector<double> predicted, std::vector<double> truth) {
  if (predicted.size() != truth.size()) {
    throw Error(ErrorKind::InvalidSeries, "predicted and truth lengths differ");
  }
  if (truth.size() < 2) throw Error(ErrorKind::InvalidSeries, "need at least two points");
  auto finite = [](double x) { return std::isfinite(x); };
  if (!std::all_of(predicted.begin(), predicted.end(), finite) ||
      !std::all_of(truth.begin(), truth.end(), finite)) {
    throw Error(ErrorKind::InvalidSeries, "series contains non-finite values");
  }
  return PairedSeries(std::move(predicted), std::move(truth));
}

double mse(const PairedSeries& s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double e = s.predicted()[i] - s.truth()[i];
    acc += e * e;
  }
  return acc / static_cast<double>(s.size());
}

double r2(const PairedSeries& s) {
  require_truth_variance(s);
  const double mt = mean(s.truth());
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double e = s.predicted()[i] - s.truth()[i];
    const double d = s.truth()[i] - mt;
    ss_res += e * e;
    ss_tot += d * d;
  }
  return 1.0 - ss_res / ss_tot;
}

double correlation(const PairedSeries& s) {
  require_both_variance(s);
  const double mp = mean(s.predicted());
  const double mt = mean(s.truth());
  double spp = 0.0, stt = 0.0, spt = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double dp = s.predicted()[i] - mp;
    const double dt = s.truth()[i] - mt;
    spp += dp * dp;
    stt += dt * dt;
    spt += dp * dt;
  }
  return std::clamp(spt / std::sqrt(spp * stt), -1.0, 1.0);
}

namespace single_pass {

double mse(const PairedSeries& s) { return stream(s).mean_sq_err; }

double r2(const PairedSeries& s) {
  require_truth_variance(s);
  const auto m = stream(s);
  return 1.0 - (m.mean_sq_err * m.n) / m.m2_t;
}

double correlation(const PairedSeries& s) {
  require_both_variance(s);
  const auto m = stream(s);
  return std::clamp(m.co / std::sqrt(m.m2_p * m.m2_t), -1.0, 1.0);
}

}  // namespace single_pass

JoinedSeries join_on_id(std::istream& predicted, std::istream& truth) {
  const auto pred_rows = read_table(predicted);
  const auto truth_rows = read_table(truth);

  std::unordered_map<std::string, double> truth_by_id;
  for (const auto& [id, v] : truth_rows) truth_by_id.insert_or_assign(id, v);

  JoinedSeries out;
  std::unordered_map<std::string, bool> matched;
  for (const auto& [id, v] : pred_rows) {
    const auto it = truth_by_id.find(id);
    if (it == truth_by_id.end()) {
      out.unmatched.push_back(id);
      continue;
    }
    out.ids.push_back(id);
    out.predicted.push_back(v);
    out.truth.push_back(it->second);
    matched[id] = true;
  }
  for (const auto& [id, v] : truth_rows) {
    if (!matched.count(id)) out.unmatched.push_back(id);
  }
  return out;
}

}  // namespace dtifuse
