#include "cotunnel/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "cotunnel/errors.hpp"

namespace cotunnel {

namespace {

double vertex_coupling(const EnergyConfig& config, Lead lead) {
  switch (lead) {
    case Lead::L: return config.V_L;
    case Lead::R1: return config.V_R1;
    case Lead::R2: return config.V_R2;
    case Lead::Dot: break;
  }
  throw std::invalid_argument("vertex lead cannot be the dot");
}

// Vertex action as (annihilated mode, created mode) registry indices.
std::pair<int, int> vertex_modes(const ModeRegistry& registry, const Vertex& v) {
  const int dot = registry.index_of(Lead::Dot, 0, v.spin);
  const int lead = registry.index_of(v.lead, v.slot, v.spin);
  if (v.kind == Vertex::Kind::In) return {lead, dot};
  return {dot, lead};
}

struct Application {
  FockState final_state;
  int sign;
  std::array<double, 3> intermediate_energies;
  std::array<double, 3> denominators;
  bool double_occupancy;
  bool nonzero;
};

Application apply_vertices(const EnergyConfig& config, const ModeRegistry& registry,
                           const std::array<Vertex, 4>& vertices, FockState initial) {
  Application result{};
  const double input_energy = state_energy(config, registry, initial);
  const int dot_up = registry.index_of(Lead::Dot, 0, Spin::Up);
  const int dot_down = registry.index_of(Lead::Dot, 0, Spin::Down);
  FockState state = initial;
  int sign = 1;
  for (int step = 0; step < 4; ++step) {
    const auto [from, to] = vertex_modes(registry, vertices[static_cast<std::size_t>(step)]);
    const auto removed = apply_annihilation(registry, state, from);
    if (!removed) return result;
    const auto added = apply_creation(registry, removed->state, to);
    if (!added) return result;
    state = added->state;
    sign *= removed->sign * added->sign;
    if (state.occupied(dot_up) && state.occupied(dot_down)) result.double_occupancy = true;
    if (step < 3) {
      const double energy = state_energy(config, registry, state);
      result.intermediate_energies[static_cast<std::size_t>(step)] = energy;
      result.denominators[static_cast<std::size_t>(step)] = input_energy - energy;
    }
  }
  result.final_state = state;
  result.sign = sign;
  result.nonzero = true;
  return result;
}

std::complex<double> resolvent_amplitude(const EnergyConfig& config, const Application& app) {
  const double tol = config.degeneracy_tol * characteristic_scale(config);
  double product = 1.0;
  for (int j = 0; j < 3; ++j) {
    const double d = app.denominators[static_cast<std::size_t>(j)];
    if (std::abs(d) < tol) {
      std::ostringstream os;
      os << "2E_L - E_intermediate[" << j << "]";
      throw PoleError(os.str(), d);
    }
    product *= d;
  }
  return {app.sign / product, 0.0};
}

FockState initial_state_of(const EnergyConfig& config, const ModeRegistry& registry,
                           SpinPair spins) {
  const StateVector initial = build_initial_state(config, registry, spins);
  return initial.begin()->first;  // single basis state, amplitude +1
}

SpinPair spins_of(const Ordering& ordering) {
  SpinPair spins;
  for (const Vertex& v : ordering.vertices) {
    if (v.kind != Vertex::Kind::In) continue;
    (v.slot == 0 ? spins.sigma : spins.sigma_prime) = v.spin;
  }
  return spins;
}

}  // namespace

std::vector<Ordering> enumerate_orderings(const EnergyConfig& config, SpinPair spins) {
  require_valid(config);
  const ModeRegistry registry = build_registry(config);
  const FockState initial = initial_state_of(config, registry, spins);

  const Vertex in_k{Vertex::Kind::In, Lead::L, 0, spins.sigma, config.V_L};
  const Vertex in_kprime{Vertex::Kind::In, Lead::L, 1, spins.sigma_prime, config.V_L};

  std::vector<Ordering> orderings;
  const std::array<std::pair<Spin, Spin>, 4> out_spins = {
      std::pair{Spin::Up, Spin::Down}, {Spin::Down, Spin::Up}, {Spin::Up, Spin::Up},
      {Spin::Down, Spin::Down}};
  for (const auto& [spin_r1, spin_r2] : out_spins) {
    const Vertex out_r1{Vertex::Kind::Out, Lead::R1, 0, spin_r1, config.V_R1};
    const Vertex out_r2{Vertex::Kind::Out, Lead::R2, 0, spin_r2, config.V_R2};
    const std::array<Vertex, 4> roles = {in_k, in_kprime, out_r1, out_r2};

    std::array<int, 4> perm = {0, 1, 2, 3};
    do {
      std::array<Vertex, 4> sequence;
      for (int i = 0; i < 4; ++i) {
        sequence[static_cast<std::size_t>(i)] = roles[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
      }
      const Application app = apply_vertices(config, registry, sequence, initial);
      if (!app.nonzero) continue;

      Ordering ordering;
      ordering.vertices = sequence;
      ordering.intermediate_energies = app.intermediate_energies;
      ordering.final_state = app.final_state;
      ordering.amplitude = resolvent_amplitude(config, app);
      const Vertex* first_in = nullptr;
      const Vertex* first_out = nullptr;
      for (const Vertex& v : sequence) {
        if (v.kind == Vertex::Kind::In && first_in == nullptr) first_in = &v;
        if (v.kind == Vertex::Kind::Out && first_out == nullptr) first_out = &v;
      }
      ordering.first_in_slot = first_in->slot;
      ordering.first_out_is_first_in = first_out->spin == first_in->spin;
      ordering.double_occupancy = app.double_occupancy;
      orderings.push_back(std::move(ordering));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return orderings;
}

std::complex<double> ordering_amplitude(const Ordering& ordering, const EnergyConfig& config) {
  require_valid(config);
  const ModeRegistry registry = build_registry(config);
  const FockState initial = initial_state_of(config, registry, spins_of(ordering));
  const Application app = apply_vertices(config, registry, ordering.vertices, initial);
  if (!app.nonzero) {
    throw std::invalid_argument("ordering annihilates the input state");
  }
  return resolvent_amplitude(config, app);
}

std::vector<PathAmplitude> group_into_paths(const std::vector<Ordering>& orderings,
                                            const EnergyConfig& config) {
  const ModeRegistry registry = build_registry(config);

  // Partner key: the full time sequence with output leads masked out.
  auto partner_key = [](const Ordering& o) {
    std::string key;
    for (const Vertex& v : o.vertices) {
      if (v.kind == Vertex::Kind::In) {
        key += 'I';
        key += static_cast<char>('0' + v.slot);
      } else {
        key += 'O';
      }
      key += v.spin == Spin::Up ? 'u' : 'd';
    }
    return key;
  };

  std::map<std::string, std::vector<const Ordering*>> pairs;
  for (const Ordering& o : orderings) pairs[partner_key(o)].push_back(&o);

  std::vector<PathAmplitude> paths;
  for (const auto& [key, members] : pairs) {
    if (members.size() != 2) {
      throw std::logic_error("ordering without an output-exchange partner: " + key);
    }
    PathAmplitude path;
    StateVector sum;
    for (const Ordering* o : members) {
      path.orderings.push_back(*o);
      sum.accumulate(o->final_state, o->amplitude);
    }
    path.coeffs = spin_decompose(sum, registry);

    const Ordering& first = *members[0];
    const bool entered_kprime_first = first.first_in_slot == 1;
    if (!first.double_occupancy) {
      path.label = entered_kprime_first ? PathLabel::I : PathLabel::IV;
    } else if (first.first_out_is_first_in) {
      path.label = entered_kprime_first ? PathLabel::II : PathLabel::V;
    } else {
      path.label = entered_kprime_first ? PathLabel::III : PathLabel::VI;
    }
    paths.push_back(std::move(path));
  }
  std::sort(paths.begin(), paths.end(),
            [](const PathAmplitude& a, const PathAmplitude& b) { return a.label < b.label; });
  return paths;
}

SpinDecomposition spin_decompose(const StateVector& state, const ModeRegistry& registry) {
  const int r1_up = registry.index_of(Lead::R1, 0, Spin::Up);
  const int r1_down = registry.index_of(Lead::R1, 0, Spin::Down);
  const int r2_up = registry.index_of(Lead::R2, 0, Spin::Up);
  const int r2_down = registry.index_of(Lead::R2, 0, Spin::Down);
  auto pair_state = [](int a, int b) {
    return FockState{(std::uint64_t{1} << a) | (std::uint64_t{1} << b)};
  };
  const FockState ud = pair_state(r1_up, r2_down);
  const FockState du = pair_state(r1_down, r2_up);
  const FockState uu = pair_state(r1_up, r2_up);
  const FockState dd = pair_state(r1_down, r2_down);

  const double leak_tol = 1e-12 * std::max(state.norm(), 1e-300);
  for (const auto& [s, amp] : state) {
    if (s == ud || s == du || s == uu || s == dd) continue;
    if (std::abs(amp) > leak_tol) {
      throw RegimeError("state has components outside the one-electron-per-output-lead sector");
    }
  }

  SpinDecomposition d;
  const std::complex<double> a_ud = state.amplitude(ud);
  const std::complex<double> a_du = state.amplitude(du);
  d.singlet = 0.5 * (a_ud - a_du);
  d.triplet_m0 = 0.5 * (a_ud + a_du);
  d.triplet_up = state.amplitude(uu);
  d.triplet_down = state.amplitude(dd);
  return d;
}

SpinDecomposition total_output(const EnergyConfig& config, SpinPair spins) {
  const std::vector<Ordering> orderings = enumerate_orderings(config, spins);
  const ModeRegistry registry = build_registry(config);
  StateVector sum;
  for (const Ordering& o : orderings) sum.accumulate(o.final_state, o.amplitude);
  return spin_decompose(sum, registry);
}

double max_ordering_magnitude(const std::vector<Ordering>& orderings) {
  double m = 0.0;
  for (const Ordering& o : orderings) m = std::max(m, std::abs(o.amplitude));
  return m;
}

}  // namespace cotunnel
