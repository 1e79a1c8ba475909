#pragma once

// Plain-text key=value configuration files ('#' starts a comment) and the
// deterministic number formatting shared by all CSV output: 9 significant
// digits, '.' decimal separator, no negative zero.

#include <cstdint>
#include <string>
#include <string_view>

#include "cotunnel/model.hpp"

namespace cotunnel {

struct ParsedConfig {
  EnergyConfig energy;
  std::uint64_t seed = 1;
};

// Recognized keys: E_L, Delta_L, Delta_R, U (required); V_L, V_R1, V_R2,
// eps_d, degeneracy_tol, seed (optional).  Unknown or duplicate keys are
// rejected; the resulting configuration must pass validate_config.
ParsedConfig parse_config_text(std::string_view text);

ParsedConfig load_config_file(const std::string& path);

std::string format_g9(double value);

}  // namespace cotunnel
