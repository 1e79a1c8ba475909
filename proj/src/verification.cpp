#include "cotunnel/verification.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "cotunnel/closedform.hpp"
#include "cotunnel/oracle.hpp"
#include "cotunnel/perturbation.hpp"
#include "cotunnel/sampling.hpp"

namespace cotunnel {

namespace {

using Complex = std::complex<double>;

// (a_p a_q + a_q a_p)|s>, (a+_p a+_q + ...)|s>, (a_p a+_q + a+_q a_p)|s>
// accumulated exactly over every basis state of the registry.
CheckResult check_anticommutation(const ModeRegistry& registry) {
  CheckResult result{"fock_anticommutation", true, ""};
  const int n = registry.size();
  long checked = 0;

  auto apply_two = [&](FockState s, int first, int second, bool create_first, bool create_second)
      -> std::optional<SignedState> {
    const auto r1 = create_first ? apply_creation(registry, s, first)
                                 : apply_annihilation(registry, s, first);
    if (!r1) return std::nullopt;
    const auto r2 = create_second ? apply_creation(registry, r1->state, second)
                                  : apply_annihilation(registry, r1->state, second);
    if (!r2) return std::nullopt;
    return SignedState{r2->state, r1->sign * r2->sign};
  };

  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    const FockState s{bits};
    for (int p = 0; p < n && result.pass; ++p) {
      for (int q = 0; q < n && result.pass; ++q) {
        // {a_p, a_q} = 0 and {a+_p, a+_q} = 0
        for (bool create : {false, true}) {
          StateVector acc;
          if (auto r = apply_two(s, q, p, create, create)) acc.accumulate(r->state, r->sign);
          if (auto r = apply_two(s, p, q, create, create)) acc.accumulate(r->state, r->sign);
          if (acc.norm() != 0.0) {
            result.pass = false;
            result.detail = "same-kind anticommutator nonzero";
          }
        }
        // {a_p, a+_q} = delta_pq
        StateVector acc;
        if (auto r = apply_two(s, q, p, true, false)) acc.accumulate(r->state, r->sign);
        if (auto r = apply_two(s, p, q, false, true)) acc.accumulate(r->state, r->sign);
        acc.accumulate(s, p == q ? -1.0 : 0.0);
        if (acc.norm() != 0.0) {
          result.pass = false;
          result.detail = "mixed anticommutator differs from identity";
        }
        ++checked;
      }
    }
  }
  if (result.pass) {
    std::ostringstream os;
    os << n << " modes, " << (std::uint64_t{1} << n) << " states, " << checked
       << " operator pairs, exact";
    result.detail = os.str();
  }
  return result;
}

CheckResult check_hermitian(const EnergyConfig& config, const ModeRegistry& registry) {
  const Eigen::MatrixXcd h = build_hamiltonian(config, registry, 2);
  const double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
  CheckResult result{"hamiltonian_hermitian", asym == 0.0, ""};
  std::ostringstream os;
  os << "two-particle sector " << h.rows() << "x" << h.cols() << ", max |H - H^dag| = " << asym;
  result.detail = os.str();
  return result;
}

CheckResult check_number_conservation(const EnergyConfig& config, const ModeRegistry& registry) {
  // Structural: every hop maps a sector basis state into the same sector, so
  // assembling H over all sectors reproduces a block-diagonal full-space H.
  CheckResult result{"hamiltonian_number_conserving", true, ""};
  int total_dim = 0;
  for (int n = 0; n <= registry.size(); ++n) {
    const SectorBasis basis(registry, n);
    total_dim += basis.dimension();
    const Eigen::MatrixXcd h = build_hamiltonian(config, registry, n);
    if (h.rows() != basis.dimension()) {
      result.pass = false;
      result.detail = "sector dimension mismatch";
      return result;
    }
  }
  if (total_dim != (1 << registry.size())) {
    result.pass = false;
    result.detail = "sectors do not partition the Fock space";
    return result;
  }
  std::ostringstream os;
  os << "sectors 0.." << registry.size() << " partition " << total_dim << " states";
  result.detail = os.str();
  return result;
}

CheckResult check_ordering_counts(const EnergyConfig& config) {
  const auto opposite = enumerate_orderings(config, SpinPair{Spin::Up, Spin::Down});
  const auto same = enumerate_orderings(config, SpinPair{Spin::Up, Spin::Up});
  bool same_pattern_ok = true;
  for (const Ordering& o : same) same_pattern_ok = same_pattern_ok && !o.double_occupancy;
  CheckResult result;
  result.name = "ordering_counts";
  result.pass = opposite.size() == 12 && same.size() == 4 && same_pattern_ok;
  std::ostringstream os;
  os << "opposite spins: " << opposite.size() << "/12, equal spins: " << same.size()
     << "/4, equal-spin double occupancy: " << (same_pattern_ok ? "none" : "present");
  result.detail = os.str();
  return result;
}

CheckResult check_triplet_cancellation(std::mt19937_64& rng, int n_configs) {
  CheckResult result{"triplet_cancellation", true, ""};
  double worst = 0.0;
  for (int i = 0; i < n_configs; ++i) {
    const EnergyConfig config = sample_valid_config(rng);
    const auto orderings = enumerate_orderings(config, SpinPair{Spin::Up, Spin::Down});
    const SpinDecomposition total = total_output(config, SpinPair{Spin::Up, Spin::Down});
    const double floor = max_ordering_magnitude(orderings);
    const double residual = std::max({std::abs(total.triplet_m0), std::abs(total.triplet_up),
                                      std::abs(total.triplet_down)}) /
                            floor;
    worst = std::max(worst, residual);
  }
  result.pass = worst <= 1e-12;
  std::ostringstream os;
  os << n_configs << " random configs, worst |triplet|/max|ordering| = " << worst;
  result.detail = os.str();
  return result;
}

CheckResult check_closed_form(std::mt19937_64& rng, const EnergyConfig& base, int n_configs) {
  CheckResult result{"closed_form_equivalence", true, ""};
  double worst = 0.0;
  for (int i = 0; i <= n_configs; ++i) {
    const EnergyConfig config = i == 0 ? base : sample_valid_config(rng);
    const auto orderings = enumerate_orderings(config, SpinPair{Spin::Up, Spin::Down});
    for (const PathAmplitude& path : group_into_paths(orderings, config)) {
      const ClosedFormResult reference =
          path_closed_form(path.label, config.E_L, config.Delta_L, config.Delta_R, config.U,
                           config.degeneracy_tol);
      const double scale = std::max(std::abs(reference.singlet), std::abs(reference.triplet_m0));
      const double diff = std::max(std::abs(path.coeffs.singlet.real() - reference.singlet),
                                   std::abs(path.coeffs.triplet_m0.real() - reference.triplet_m0));
      worst = std::max(worst, diff / scale);
    }
  }
  result.pass = worst <= 1e-10;
  std::ostringstream os;
  os << (n_configs + 1) << " configs x 6 paths, worst relative difference = " << worst;
  result.detail = os.str();
  return result;
}

CheckResult check_identity_chain(std::mt19937_64& rng, const EnergyConfig& base, int n_configs) {
  CheckResult result{"identity_chain", true, ""};
  int failures = 0;
  for (int i = 0; i <= n_configs; ++i) {
    const EnergyConfig config = i == 0 ? base : sample_valid_config(rng);
    const IdentityReport report = cross_check_identities(config);
    if (!report.ok) ++failures;
  }
  result.pass = failures == 0;
  std::ostringstream os;
  os << (n_configs + 1) << " configs, " << failures << " identity failures";
  result.detail = os.str();
  return result;
}

CheckResult check_oracle_match(const EnergyConfig& config) {
  CheckResult result{"oracle_perturbative_match", true, ""};
  const EvolutionResult evolution =
      transition_probabilities(config, SpinPair{Spin::Up, Spin::Down}, default_time_grid(config));
  const QuadraticFit fit = fit_quadratic_growth(evolution);
  const double predicted =
      predicted_quadratic_coefficient(config, SpinPair{Spin::Up, Spin::Down});
  const double rel = std::abs(fit.coefficient - predicted) / predicted;
  result.pass = rel <= 0.02 && fit.residual <= 0.05 * fit.coefficient;
  std::ostringstream os;
  os << "fitted/predicted - 1 = " << (fit.coefficient / predicted - 1.0)
     << ", norm drift = " << evolution.norm_drift;
  result.detail = os.str();
  return result;
}

}  // namespace

std::vector<CheckResult> run_verification(const ParsedConfig& parsed) {
  const EnergyConfig& config = parsed.energy;
  require_valid(config);
  const ModeRegistry registry = build_registry(config);
  std::mt19937_64 rng(parsed.seed);

  std::vector<CheckResult> checks;
  checks.push_back(check_anticommutation(registry));
  checks.push_back(check_hermitian(config, registry));
  checks.push_back(check_number_conservation(config, registry));
  checks.push_back(check_ordering_counts(config));
  checks.push_back(check_triplet_cancellation(rng, 200));
  checks.push_back(check_closed_form(rng, config, 50));
  checks.push_back(check_identity_chain(rng, config, 200));
  checks.push_back(check_oracle_match(config));
  return checks;
}

}  // namespace cotunnel
