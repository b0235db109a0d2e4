#include "dtifuse/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <string>

namespace dtifuse {
namespace {

double parse_real(std::string_view text, const std::string& where) {
  const auto body = trim(text);
  double v = 0.0;
  const auto* end = body.data() + body.size();
  const auto [ptr, ec] = std::from_chars(body.data(), end, v);
  if (ec != std::errc{} || ptr != end || body.empty()) {
    throw Error(ErrorKind::InvalidConfig, where + ": not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string> parse_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = trim(text.substr(start, comma == std::string_view::npos
                                                   ? std::string_view::npos
                                                   : comma - start));
    if (!piece.empty()) out.push_back(fold_case(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

FusionConfig parse_config(std::istream& in, FusionConfig base) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto where = "line " + std::to_string(lineno);
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::InvalidConfig, where + ": expected key = value");
    }
    const auto key = fold_case(trim(view.substr(0, eq)));
    const auto value = trim(view.substr(eq + 1));
    if (key == "alpha") {
      base.alpha = parse_real(value, where);
    } else if (key == "beta") {
      base.beta = parse_real(value, where);
    } else if (key == "search_result_count") {
      const double n = parse_real(value, where);
      if (n < 1 || n != static_cast<double>(static_cast<std::size_t>(n))) {
        throw Error(ErrorKind::InvalidConfig, where + ": search_result_count must be a positive integer");
      }
      base.search_result_count = static_cast<std::size_t>(n);
    } else if (key == "positive_keywords") {
      base.positive_keywords = parse_list(value);
    } else if (key == "strong_keywords") {
      base.strong_keywords = parse_list(value);
    } else {
      throw Error(ErrorKind::InvalidConfig, where + ": unknown key '" + key + "'");
    }
  }
  base.validate();
  return base;
}

FusionConfig load_config_file(const std::filesystem::path& path, FusionConfig base) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::InvalidConfig, "cannot open config file " + path.string());
  }
  return parse_config(in, std::move(base));
}

void apply_env_overrides(FusionConfig& cfg) {
  if (const char* a = std::getenv(kAlphaEnv)) cfg.alpha = parse_real(a, kAlphaEnv);
  if (const char* b = std::getenv(kBetaEnv)) cfg.beta = parse_real(b, kBetaEnv);
  cfg.validate();
}

}  // namespace dtifuse
