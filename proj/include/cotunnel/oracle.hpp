#pragma once

// Exact, non-perturbative cross-check: evolve the two-electron input state
// under the full truncated Hamiltonian and track where the population goes.
// Time evolution uses the eigendecomposition of the Hermitian sector matrix,
// exp(-iHt)|psi> = Q exp(-i Lambda t) Q^dag |psi>.
//
// Probabilities use orthonormal projectors, so over the window the singlet
// amplitude grows as |<S_n|psi(t)>| ~ sqrt(2) |V_L^2 V_R1 V_R2 A| t with A the
// coupling-stripped total singlet coefficient; the predicted quadratic
// coefficient of P_singlet therefore carries the squared norm of the
// unnormalized singlet combination, c = 2 (V_L^2 V_R1 V_R2 A)^2.

#include <vector>

#include <Eigen/Dense>

#include "cotunnel/fock.hpp"
#include "cotunnel/model.hpp"

namespace cotunnel {

struct EvolutionResult {
  std::vector<double> times;
  std::vector<double> p_singlet;
  std::vector<double> p_triplet_total;
  std::vector<double> p_leak;      // anything outside input state + output sector
  std::vector<double> p_survival;  // weight still on the input basis state
  std::vector<double> norms;
  double norm_drift = 0.0;  // max |norm - 1| over the grid
};

// Reusable spectral propagator for one particle-number sector.
class SpectralPropagator {
 public:
  SpectralPropagator(const EnergyConfig& config, int n_particles);

  const ModeRegistry& registry() const { return registry_; }
  const SectorBasis& basis() const { return basis_; }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

  Eigen::VectorXcd evolve(const Eigen::VectorXcd& psi0, double t) const;

 private:
  ModeRegistry registry_;
  SectorBasis basis_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXcd eigenvectors_;
};

// exp(-iHt) applied to a pure-sector state; norm preserved to 1e-10.
StateVector evolve(const EnergyConfig& config, const StateVector& initial, double t);

EvolutionResult transition_probabilities(const EnergyConfig& config, SpinPair spins,
                                         const std::vector<double>& t_grid);

// Smallest |input energy - intermediate energy| over all orderings; sets the
// transient time scale of the co-tunneling dynamics.
double min_denominator_scale(const EnergyConfig& config);

// Grid long enough that the secular growth dominates the virtual-state
// transients: [0, 5e4 / min_denominator_scale], 513 points.
std::vector<double> default_time_grid(const EnergyConfig& config);

double coupling_product(const EnergyConfig& config);  // V_L^2 V_R1 V_R2

// 2 (V_L^2 V_R1 V_R2 A)^2 with A the closed-form total singlet coefficient;
// zero for equal input spins.
double predicted_quadratic_coefficient(const EnergyConfig& config, SpinPair spins);

struct QuadraticFit {
  double coefficient = 0.0;  // of t^2
  double quartic = 0.0;      // of the t^4 correction term
  double residual = 0.0;     // rms misfit per unit t^2, same units as coefficient
};

// Least-squares fit of P_singlet(t) = c t^2 + q t^4; the t^4 term absorbs the
// slow envelope from second-order level shifts so c is unbiased.  Requires at
// least five points, all within the perturbative window P <= 1e-4.
QuadraticFit fit_quadratic_growth(const EvolutionResult& result);

}  // namespace cotunnel
