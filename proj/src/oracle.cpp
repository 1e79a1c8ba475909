#include "cotunnel/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "cotunnel/closedform.hpp"
#include "cotunnel/errors.hpp"
#include "cotunnel/perturbation.hpp"

namespace cotunnel {

namespace {

constexpr int kMaxSectorDimension = 2000;
constexpr double kNormTolerance = 1e-10;

using Complex = std::complex<double>;

}  // namespace

SpectralPropagator::SpectralPropagator(const EnergyConfig& config, int n_particles)
    : registry_(build_registry(config)), basis_(registry_, n_particles) {
  if (basis_.dimension() > kMaxSectorDimension) {
    throw RegimeError("sector dimension exceeds " + std::to_string(kMaxSectorDimension));
  }
  const Eigen::MatrixXcd h = build_hamiltonian(config, registry_, n_particles);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigendecomposition failed", std::numeric_limits<double>::quiet_NaN());
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();

  const double scale = std::max(h.cwiseAbs().maxCoeff(), 1.0);
  const double residual =
      (h - eigenvectors_ * eigenvalues_.asDiagonal() * eigenvectors_.adjoint()).cwiseAbs().maxCoeff() /
      scale;
  if (residual > 1e-12) {
    throw NumericError("eigendecomposition residual above 1e-12", residual);
  }
}

Eigen::VectorXcd SpectralPropagator::evolve(const Eigen::VectorXcd& psi0, double t) const {
  const Eigen::VectorXcd coeffs = eigenvectors_.adjoint() * psi0;
  const Eigen::VectorXcd phases =
      (Complex(0.0, -t) * eigenvalues_.cast<Complex>().array()).exp().matrix();
  return eigenvectors_ * coeffs.cwiseProduct(phases);
}

StateVector evolve(const EnergyConfig& config, const StateVector& initial, double t) {
  require_valid(config);
  if (t < 0.0 || !std::isfinite(t)) throw ConfigError("evolution time must be finite and >= 0");
  if (initial.empty()) throw ConfigError("cannot evolve an empty state");

  const int n_particles = initial.begin()->first.particle_count();
  for (const auto& [state, amp] : initial) {
    if (state.particle_count() != n_particles) {
      throw ConfigError("initial state spans multiple particle-number sectors");
    }
  }

  const SpectralPropagator propagator(config, n_particles);
  const SectorBasis& basis = propagator.basis();
  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(basis.dimension());
  for (const auto& [state, amp] : initial) psi0(basis.index_of(state)) = amp;

  const Eigen::VectorXcd psi = propagator.evolve(psi0, t);
  const double drift = std::abs(psi.norm() - psi0.norm());
  if (drift > kNormTolerance) throw NumericError("evolution norm drift above tolerance", drift);

  StateVector out;
  for (int i = 0; i < basis.dimension(); ++i) {
    if (psi(i) != Complex{0.0, 0.0}) out.accumulate(basis.state(i), psi(i));
  }
  return out;
}

EvolutionResult transition_probabilities(const EnergyConfig& config, SpinPair spins,
                                         const std::vector<double>& t_grid) {
  require_valid(config);
  for (double t : t_grid) {
    if (t < 0.0 || !std::isfinite(t)) throw ConfigError("time grid must be finite and >= 0");
  }

  const SpectralPropagator propagator(config, 2);
  const ModeRegistry& registry = propagator.registry();
  const SectorBasis& basis = propagator.basis();

  const StateVector initial = build_initial_state(config, registry, spins);
  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(basis.dimension());
  for (const auto& [state, amp] : initial) psi0(basis.index_of(state)) = amp;
  const int initial_index = basis.index_of(initial.begin()->first);

  auto pair_index = [&](Spin s1, Spin s2) {
    const std::uint64_t b1 = std::uint64_t{1} << registry.index_of(Lead::R1, 0, s1);
    const std::uint64_t b2 = std::uint64_t{1} << registry.index_of(Lead::R2, 0, s2);
    return basis.index_of(FockState{b1 | b2});
  };
  const int i_ud = pair_index(Spin::Up, Spin::Down);
  const int i_du = pair_index(Spin::Down, Spin::Up);
  const int i_uu = pair_index(Spin::Up, Spin::Up);
  const int i_dd = pair_index(Spin::Down, Spin::Down);

  EvolutionResult result;
  result.times = t_grid;
  result.p_singlet.reserve(t_grid.size());
  result.p_triplet_total.reserve(t_grid.size());
  result.p_leak.reserve(t_grid.size());
  result.p_survival.reserve(t_grid.size());
  result.norms.reserve(t_grid.size());

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (double t : t_grid) {
    const Eigen::VectorXcd psi = propagator.evolve(psi0, t);
    const Complex a_ud = psi(i_ud);
    const Complex a_du = psi(i_du);
    const double p_s = std::norm((a_ud - a_du) * inv_sqrt2);
    const double p_t = std::norm((a_ud + a_du) * inv_sqrt2) + std::norm(psi(i_uu)) +
                       std::norm(psi(i_dd));
    const double p_surv = std::norm(psi(initial_index));
    double p_leak = 0.0;
    for (int i = 0; i < basis.dimension(); ++i) {
      if (i == i_ud || i == i_du || i == i_uu || i == i_dd || i == initial_index) continue;
      p_leak += std::norm(psi(i));
    }
    const double norm = psi.norm();
    result.p_singlet.push_back(p_s);
    result.p_triplet_total.push_back(p_t);
    result.p_leak.push_back(p_leak);
    result.p_survival.push_back(p_surv);
    result.norms.push_back(norm);
    result.norm_drift = std::max(result.norm_drift, std::abs(norm - 1.0));
  }
  if (result.norm_drift > kNormTolerance) {
    throw NumericError("evolution norm drift above tolerance", result.norm_drift);
  }
  return result;
}

double min_denominator_scale(const EnergyConfig& config) {
  const std::vector<Ordering> orderings =
      enumerate_orderings(config, SpinPair{Spin::Up, Spin::Down});
  const ModeRegistry registry = build_registry(config);
  const StateVector initial =
      build_initial_state(config, registry, SpinPair{Spin::Up, Spin::Down});
  const double input_energy = state_energy(config, registry, initial.begin()->first);
  double scale = std::numeric_limits<double>::infinity();
  for (const Ordering& o : orderings) {
    for (double e : o.intermediate_energies) {
      scale = std::min(scale, std::abs(input_energy - e));
    }
  }
  return scale;
}

std::vector<double> default_time_grid(const EnergyConfig& config) {
  const double t_max = 5e4 / min_denominator_scale(config);
  const int n = 513;
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = t_max * i / (n - 1);
  return grid;
}

double coupling_product(const EnergyConfig& config) {
  return config.V_L * config.V_L * config.V_R1 * config.V_R2;
}

double predicted_quadratic_coefficient(const EnergyConfig& config, SpinPair spins) {
  if (spins.same()) return 0.0;
  const double amplitude =
      coupling_product(config) * total_singlet_closed_form(config.E_L, config.Delta_L,
                                                           config.Delta_R, config.U,
                                                           config.degeneracy_tol);
  return 2.0 * amplitude * amplitude;
}

QuadraticFit fit_quadratic_growth(const EvolutionResult& result) {
  constexpr double kWindowCeiling = 1e-4;
  const std::size_t n = result.times.size();
  if (n < 5) throw RegimeError("quadratic fit needs at least five time points");
  if (result.p_singlet.size() != n) throw std::invalid_argument("times/probabilities mismatch");

  double t_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (result.p_singlet[i] > kWindowCeiling) {
      throw RegimeError("probabilities exceed the perturbative window (P > 1e-4)");
    }
    t_max = std::max(t_max, result.times[i]);
  }

  QuadraticFit fit;
  if (t_max == 0.0) return fit;  // all-zero grid

  // Normal equations on normalized regressors (t/t_max)^2 and (t/t_max)^4.
  double s22 = 0.0, s24 = 0.0, s44 = 0.0, b2 = 0.0, b4 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = result.times[i] / t_max;
    const double x2 = x * x, x4 = x2 * x2;
    s22 += x2 * x2;
    s24 += x2 * x4;
    s44 += x4 * x4;
    b2 += result.p_singlet[i] * x2;
    b4 += result.p_singlet[i] * x4;
  }
  const double det = s22 * s44 - s24 * s24;
  double c_n, q_n;
  if (det > 1e-12 * s22 * s44) {
    c_n = (s44 * b2 - s24 * b4) / det;
    q_n = (s22 * b4 - s24 * b2) / det;
  } else {
    c_n = s22 > 0.0 ? b2 / s22 : 0.0;  // degenerate grid: plain quadratic fit
    q_n = 0.0;
  }

  double misfit = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = result.times[i] / t_max;
    const double r = result.p_singlet[i] - c_n * x * x - q_n * x * x * x * x;
    misfit += r * r;
  }
  fit.coefficient = c_n / (t_max * t_max);
  fit.quartic = q_n / (t_max * t_max * t_max * t_max);
  fit.residual = std::sqrt(misfit / s22) / (t_max * t_max);
  return fit;
}

}  // namespace cotunnel
