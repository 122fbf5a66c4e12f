#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>

#include "sqzcool/model_params.hpp"

namespace sqzcool {

/// Raw parameters as read from a configuration file, before validation.
struct ModelConfig {
  OptomechParams optomech;
  SqueezerParams squeezer;
};

/// Parses `key = value` lines. Keys are the field names of OptomechParams
/// and SqueezerParams (omega_m, gamma, n_th, kappa_a_s, kappa_a_loss,
/// delta_a, g, chi, kappa_c_s, kappa_c_loss, phi), optionally prefixed with
/// `optomech.` or `squeezer.`. `#` starts a comment. Throws kConfigError on
/// unknown keys, malformed lines, or values that are not numbers.
ModelConfig parse_config(std::istream& in);

/// parse_config on a file; throws kIoError if it cannot be opened.
ModelConfig load_config(const std::filesystem::path& path);

/// Applies one `key=value` assignment with the same key rules.
void apply_override(ModelConfig& config, std::string_view assignment);

}  // namespace sqzcool
