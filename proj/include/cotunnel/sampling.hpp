#pragma once

// Random valid configurations in the operating regime: left lead full and
// below the Fermi level, dot empty, all denominators safely off resonance.

#include <random>

#include "cotunnel/model.hpp"

namespace cotunnel {

inline EnergyConfig sample_valid_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> e_l(-6.0, -1.0);
  std::uniform_real_distribution<double> d_r(0.5, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  for (;;) {
    EnergyConfig config;
    config.E_L = e_l(rng);
    config.Delta_R = d_r(rng);
    config.Delta_L = 0.8 * config.Delta_R * unit(rng);
    config.U = u(rng);
    config.V_L = config.V_R1 = config.V_R2 = 0.01;
    if (validate_config(config).empty()) return config;
  }
}

}  // namespace cotunnel
