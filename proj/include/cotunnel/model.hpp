#pragma once

// Physical configuration of the three-port dot: energy parameterization,
// validity checks, the truncated single-level Anderson Hamiltonian, and the
// two-electron input state.
//
// Lead energies are parameterized by the mean input energy E_L and the
// half-splittings Delta_L (input pair) and Delta_R (output pair):
//   eps_{L,k}  = E_L + Delta_L      eps_{R1} = E_L + Delta_R
//   eps_{L,k'} = E_L - Delta_L      eps_{R2} = E_L - Delta_R
// so the two-electron input and output energies both sum to 2 E_L.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cotunnel/fock.hpp"

namespace cotunnel {

struct EnergyConfig {
  double E_L = 0.0;
  double Delta_L = 0.0;
  double Delta_R = 0.0;
  double U = 0.0;
  double eps_d = 0.0;
  double V_L = 0.01;
  double V_R1 = 0.01;
  double V_R2 = 0.01;
  double degeneracy_tol = 1e-9;  // relative tolerance for pole detection
};

struct SpinPair {
  Spin sigma = Spin::Up;        // spin of the E_L + Delta_L input electron
  Spin sigma_prime = Spin::Down;  // spin of the E_L - Delta_L input electron

  bool same() const { return sigma == sigma_prime; }
};

struct LeadEnergies {
  double L_k;       // E_L + Delta_L
  double L_kprime;  // E_L - Delta_L
  double R1;        // E_L + Delta_R
  double R2;        // E_L - Delta_R
};

struct Violation {
  std::string message;
};

// max(|E_L|, Delta_R, U, 1); pole thresholds scale with this.
double characteristic_scale(const EnergyConfig& config);

// All violated EnergyConfig invariants; empty means valid.
std::vector<Violation> validate_config(const EnergyConfig& config);

// Throws ConfigError listing every violation.
void require_valid(const EnergyConfig& config);

LeadEnergies lead_energies(const EnergyConfig& config);

// The 10-mode registry: two L slots (x2 spins), one slot each for R1, R2 and
// the dot.  Canonical order: L < R1 < R2 < dot, slot ascending, up < down.
ModeRegistry build_registry(const EnergyConfig& config);

// Unperturbed energy of a basis state: occupied mode energies plus U when the
// dot is doubly occupied.
double state_energy(const EnergyConfig& config, const ModeRegistry& registry, FockState state);

// Fixed-particle-number sector with dense indexing.
class SectorBasis {
 public:
  SectorBasis(const ModeRegistry& registry, int n_particles);

  int dimension() const { return static_cast<int>(states_.size()); }
  const std::vector<FockState>& states() const { return states_; }
  FockState state(int index) const { return states_.at(static_cast<std::size_t>(index)); }
  int index_of(FockState s) const;  // throws std::out_of_range if absent

 private:
  std::vector<FockState> states_;
};

// Hamiltonian on the given particle-number sector: diagonal mode energies,
// the on-site charging term, and spin-conserving lead-dot hops with fermionic
// signs.  Hermitian by construction.
Eigen::MatrixXcd build_hamiltonian(const EnergyConfig& config, const ModeRegistry& registry,
                                   int n_particles);

// |phi_i> = a+_{L,k,sigma} a+_{L,k',sigma'} |0>, normalized, sign fixed by the
// canonical ordering.  Equal spins with Delta_L = 0 address one mode twice and
// are rejected.
StateVector build_initial_state(const EnergyConfig& config, const ModeRegistry& registry,
                                SpinPair spins);

}  // namespace cotunnel
