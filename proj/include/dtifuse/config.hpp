#pragma once

#include <filesystem>
#include <istream>

#include "dtifuse/core.hpp"

namespace dtifuse {

// Configuration files are `key = value` lines; `#` starts a comment.
//
//   alpha = 0.3
//   beta = 0.3
//   search_result_count = 10
//   positive_keywords = interacts, binds, activates, inhibits, modulates
//   strong_keywords = strong, significant, potent, effective
//
// Unknown keys and unparsable values are rejected with InvalidConfig.
// Keys that are absent keep the value already in `base`.
FusionConfig parse_config(std::istream& in, FusionConfig base = {});
FusionConfig load_config_file(const std::filesystem::path& path, FusionConfig base = {});

inline constexpr const char* kAlphaEnv = "DTIFUSE_ALPHA";
inline constexpr const char* kBetaEnv = "DTIFUSE_BETA";

// Applies DTIFUSE_ALPHA / DTIFUSE_BETA when set.
void apply_env_overrides(FusionConfig& cfg);

}  // namespace dtifuse
