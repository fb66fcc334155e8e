#pragma once

#include "mild/reaction_diffusion.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace mild::io {

struct LoadedConfig {
  rd::RDConfig config;
  /// Human-readable notes, e.g. which keys fell back to defaults.
  std::vector<std::string> notices;
};

/// Flat `key = value` document; `#` starts a comment. Unknown or duplicate
/// keys and malformed values are hard errors with line/column positions.
LoadedConfig parse_config(std::string_view text);
LoadedConfig load_config(const std::string& path);

/// Assigns one key from its textual value, then re-validates.
void set_config_value(rd::RDConfig& cfg, std::string_view key, std::string_view value);

const std::vector<std::string>& config_keys();

/// Flat `key = value` rendering of every key, in config_keys() order.
std::string describe(const rd::RDConfig& cfg);

}  // namespace mild::io
