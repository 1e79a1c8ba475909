#include "cotunnel/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cotunnel/errors.hpp"

namespace cotunnel {

double characteristic_scale(const EnergyConfig& config) {
  return std::max({std::abs(config.E_L), config.Delta_R, config.U, 1.0});
}

std::vector<Violation> validate_config(const EnergyConfig& config) {
  std::vector<Violation> v;
  auto add = [&v](const std::string& msg) { v.push_back(Violation{msg}); };

  for (auto [value, name] : {std::pair{config.E_L, "E_L"}, {config.Delta_L, "Delta_L"},
                             {config.Delta_R, "Delta_R"}, {config.U, "U"}, {config.eps_d, "eps_d"},
                             {config.V_L, "V_L"}, {config.V_R1, "V_R1"}, {config.V_R2, "V_R2"},
                             {config.degeneracy_tol, "degeneracy_tol"}}) {
    if (!std::isfinite(value)) add(std::string(name) + " is not finite");
  }
  if (!v.empty()) return v;

  if (config.degeneracy_tol <= 0) add("degeneracy_tol must be > 0");
  if (config.Delta_L < 0) add("Delta_L must be >= 0");
  if (config.Delta_R <= 0) add("Delta_R must be > 0");
  if (config.U < 0) add("U must be >= 0");
  if (config.V_L < 0) add("V_L must be >= 0");
  if (config.V_R1 < 0) add("V_R1 must be >= 0");
  if (config.V_R2 < 0) add("V_R2 must be >= 0");
  if (!(config.Delta_L < config.Delta_R)) {
    std::ostringstream os;
    os << "Delta_L < Delta_R violated (Delta_L=" << config.Delta_L
       << ", Delta_R=" << config.Delta_R << ")";
    add(os.str());
  }

  const double tol = config.degeneracy_tol * characteristic_scale(config);
  auto pole = [&](double value, const std::string& factor) {
    if (std::abs(value) < tol) add("pole: " + factor);
  };
  pole(config.E_L + config.Delta_L, "E_L+Delta_L");
  pole(config.E_L - config.Delta_L, "E_L-Delta_L");
  pole(config.E_L + config.Delta_R, "E_L+Delta_R");
  pole(config.E_L - config.Delta_R, "E_L-Delta_R");
  pole(2.0 * config.E_L - config.U, "2E_L-U");
  pole(config.Delta_L * config.Delta_L - config.Delta_R * config.Delta_R, "Delta_L^2-Delta_R^2");
  // No input energy may coincide with an output energy.
  pole(config.Delta_L - config.Delta_R, "Delta_L-Delta_R");
  return v;
}

void require_valid(const EnergyConfig& config) {
  const auto violations = validate_config(config);
  if (violations.empty()) return;
  std::string msg = "invalid configuration:";
  for (const Violation& v : violations) msg += "\n  " + v.message;
  throw ConfigError(msg);
}

LeadEnergies lead_energies(const EnergyConfig& config) {
  require_valid(config);
  return LeadEnergies{config.E_L + config.Delta_L, config.E_L - config.Delta_L,
                      config.E_L + config.Delta_R, config.E_L - config.Delta_R};
}

ModeRegistry build_registry(const EnergyConfig& config) {
  require_valid(config);
  const LeadEnergies e = lead_energies(config);
  std::vector<Mode> modes;
  modes.reserve(10);
  modes.push_back({Lead::L, 0, Spin::Up, e.L_k});
  modes.push_back({Lead::L, 0, Spin::Down, e.L_k});
  modes.push_back({Lead::L, 1, Spin::Up, e.L_kprime});
  modes.push_back({Lead::L, 1, Spin::Down, e.L_kprime});
  modes.push_back({Lead::R1, 0, Spin::Up, e.R1});
  modes.push_back({Lead::R1, 0, Spin::Down, e.R1});
  modes.push_back({Lead::R2, 0, Spin::Up, e.R2});
  modes.push_back({Lead::R2, 0, Spin::Down, e.R2});
  modes.push_back({Lead::Dot, 0, Spin::Up, config.eps_d});
  modes.push_back({Lead::Dot, 0, Spin::Down, config.eps_d});
  return ModeRegistry(std::move(modes));
}

double state_energy(const EnergyConfig& config, const ModeRegistry& registry, FockState state) {
  double e = 0.0;
  bool dot_up = false, dot_down = false;
  for (int i = 0; i < registry.size(); ++i) {
    if (!state.occupied(i)) continue;
    const Mode& m = registry.mode(i);
    e += m.energy;
    if (m.lead == Lead::Dot) (m.spin == Spin::Up ? dot_up : dot_down) = true;
  }
  if (dot_up && dot_down) e += config.U;
  return e;
}

SectorBasis::SectorBasis(const ModeRegistry& registry, int n_particles)
    : states_(enumerate_basis(registry, n_particles)) {}

int SectorBasis::index_of(FockState s) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), s);
  if (it == states_.end() || *it != s) throw std::out_of_range("state not in sector");
  return static_cast<int>(it - states_.begin());
}

Eigen::MatrixXcd build_hamiltonian(const EnergyConfig& config, const ModeRegistry& registry,
                                   int n_particles) {
  require_valid(config);
  const SectorBasis basis(registry, n_particles);
  const int dim = basis.dimension();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);

  // (lead mode index, matching-spin dot index, coupling)
  struct Hop {
    int lead_mode;
    int dot_mode;
    double coupling;
  };
  std::vector<Hop> hops;
  for (int i = 0; i < registry.size(); ++i) {
    const Mode& m = registry.mode(i);
    if (m.lead == Lead::Dot) continue;
    const double v = m.lead == Lead::L ? config.V_L : (m.lead == Lead::R1 ? config.V_R1 : config.V_R2);
    hops.push_back({i, registry.index_of(Lead::Dot, 0, m.spin), v});
  }

  for (int j = 0; j < dim; ++j) {
    const FockState s = basis.state(j);
    h(j, j) = state_energy(config, registry, s);
    for (const Hop& hop : hops) {
      // V a+_lead a_dot and its conjugate V a+_dot a_lead.
      for (auto [from, to] : {std::pair{hop.dot_mode, hop.lead_mode}, {hop.lead_mode, hop.dot_mode}}) {
        const auto removed = apply_annihilation(registry, s, from);
        if (!removed) continue;
        const auto added = apply_creation(registry, removed->state, to);
        if (!added) continue;
        h(basis.index_of(added->state), j) += hop.coupling * removed->sign * added->sign;
      }
    }
  }
  return h;
}

StateVector build_initial_state(const EnergyConfig& config, const ModeRegistry& registry,
                                SpinPair spins) {
  require_valid(config);
  if (spins.same() && config.Delta_L == 0.0) {
    throw ConfigError("equal-spin input with Delta_L = 0 addresses one mode twice (zero state)");
  }
  const int k = registry.index_of(Lead::L, 0, spins.sigma);
  const int kprime = registry.index_of(Lead::L, 1, spins.sigma_prime);
  const auto first = apply_creation(registry, FockState{0}, kprime);
  const auto second = apply_creation(registry, first->state, k);
  StateVector state;
  state.accumulate(second->state, static_cast<double>(first->sign * second->sign));
  return state;
}

}  // namespace cotunnel
