#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "cotunnel/errors.hpp"
#include "cotunnel/model.hpp"

using namespace cotunnel;

namespace {

EnergyConfig example_config() {
  EnergyConfig config;
  config.E_L = -3.0;
  config.Delta_L = 0.5;
  config.Delta_R = 1.0;
  config.U = 2.0;
  return config;
}

bool any_violation_contains(const std::vector<Violation>& violations, const std::string& text) {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) {
    return v.message.find(text) != std::string::npos;
  });
}

}  // namespace

TEST_CASE("lead energies from the splitting parameterization") {
  const LeadEnergies e = lead_energies(example_config());
  CHECK(e.L_k == -2.5);
  CHECK(e.L_kprime == -3.5);
  CHECK(e.R1 == -2.0);
  CHECK(e.R2 == -4.0);
  CHECK(e.L_k + e.L_kprime == e.R1 + e.R2);  // two-electron energy conservation

  EnergyConfig degenerate = example_config();
  degenerate.Delta_L = 0.0;
  const LeadEnergies d = lead_energies(degenerate);
  CHECK(d.L_k == -3.0);
  CHECK(d.L_kprime == -3.0);
}

TEST_CASE("lead energies round-trip to the parameterization") {
  const EnergyConfig config = example_config();
  const LeadEnergies e = lead_energies(config);
  CHECK(0.5 * (e.L_k + e.L_kprime) == config.E_L);
  CHECK(0.5 * (e.L_k - e.L_kprime) == config.Delta_L);
  CHECK(0.5 * (e.R1 - e.R2) == config.Delta_R);
}

TEST_CASE("config validation") {
  CHECK(validate_config(example_config()).empty());

  EnergyConfig equal_splittings = example_config();
  equal_splittings.Delta_L = 1.0;
  const auto violations = validate_config(equal_splittings);
  CHECK(any_violation_contains(violations, "Delta_L < Delta_R"));

  EnergyConfig charging_pole = example_config();
  charging_pole.E_L = 1.0;
  charging_pole.U = 2.0;
  CHECK(any_violation_contains(validate_config(charging_pole), "2E_L-U"));

  EnergyConfig lead_pole = example_config();
  lead_pole.E_L = -1.0;  // E_L + Delta_R = 0
  CHECK(any_violation_contains(validate_config(lead_pole), "E_L+Delta_R"));

  EnergyConfig negative_u = example_config();
  negative_u.U = -1.0;
  CHECK_FALSE(validate_config(negative_u).empty());

  CHECK_THROWS_AS(require_valid(equal_splittings), ConfigError);
}

TEST_CASE("registry layout") {
  const EnergyConfig config = example_config();
  const ModeRegistry registry = build_registry(config);
  REQUIRE(registry.size() == 10);

  const LeadEnergies e = lead_energies(config);
  CHECK(registry.mode(registry.index_of(Lead::L, 0, Spin::Up)).energy == e.L_k);
  CHECK(registry.mode(registry.index_of(Lead::L, 1, Spin::Down)).energy == e.L_kprime);
  CHECK(registry.mode(registry.index_of(Lead::R1, 0, Spin::Up)).energy == e.R1);
  CHECK(registry.mode(registry.index_of(Lead::R2, 0, Spin::Down)).energy == e.R2);
  CHECK(registry.mode(registry.index_of(Lead::Dot, 0, Spin::Up)).energy == config.eps_d);

  // Stable canonical order across rebuilds.
  const ModeRegistry again = build_registry(config);
  for (int i = 0; i < registry.size(); ++i) {
    CHECK(registry.mode(i).lead == again.mode(i).lead);
    CHECK(registry.mode(i).slot == again.mode(i).slot);
    CHECK(registry.mode(i).spin == again.mode(i).spin);
    CHECK(registry.mode(i).energy == again.mode(i).energy);
  }
}

TEST_CASE("hamiltonian structure") {
  const EnergyConfig config = example_config();
  const ModeRegistry registry = build_registry(config);

  const Eigen::MatrixXcd vacuum = build_hamiltonian(config, registry, 0);
  REQUIRE(vacuum.rows() == 1);
  CHECK(vacuum(0, 0) == std::complex<double>{0.0, 0.0});

  EnergyConfig decoupled = config;
  decoupled.V_L = decoupled.V_R1 = decoupled.V_R2 = 0.0;
  const Eigen::MatrixXcd one = build_hamiltonian(decoupled, registry, 1);
  REQUIRE(one.rows() == 10);
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      if (i == j) {
        CHECK(one(i, j).real() == registry.mode(i).energy);
      } else {
        CHECK(one(i, j) == std::complex<double>{0.0, 0.0});
      }
    }
  }

  const Eigen::MatrixXcd two = build_hamiltonian(config, registry, 2);
  REQUIRE(two.rows() == 45);
  CHECK((two - two.adjoint()).cwiseAbs().maxCoeff() == 0.0);

  // Doubly occupied dot pays the charging energy: diagonal = 2 eps_d + U.
  const SectorBasis basis(registry, 2);
  const std::uint64_t dot_both = (std::uint64_t{1} << registry.index_of(Lead::Dot, 0, Spin::Up)) |
                                 (std::uint64_t{1} << registry.index_of(Lead::Dot, 0, Spin::Down));
  CHECK(two(basis.index_of(FockState{dot_both}), basis.index_of(FockState{dot_both})).real() == 2.0);
}

TEST_CASE("decoupled two-particle spectrum is pairwise energy sums") {
  EnergyConfig config = example_config();
  config.V_L = config.V_R1 = config.V_R2 = 0.0;
  const ModeRegistry registry = build_registry(config);
  const SectorBasis basis(registry, 2);
  const Eigen::MatrixXcd h = build_hamiltonian(config, registry, 2);

  std::vector<double> expected;
  for (int i = 0; i < basis.dimension(); ++i) {
    expected.push_back(state_energy(config, registry, basis.state(i)));
  }
  std::sort(expected.begin(), expected.end());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  REQUIRE(solver.info() == Eigen::Success);
  for (int i = 0; i < basis.dimension(); ++i) {
    CHECK(solver.eigenvalues()(i) ==
          doctest::Approx(expected[static_cast<std::size_t>(i)]).epsilon(1e-14));
  }
}

TEST_CASE("two-electron input state") {
  const EnergyConfig config = example_config();
  const ModeRegistry registry = build_registry(config);

  const StateVector opposite = build_initial_state(config, registry, {Spin::Up, Spin::Down});
  REQUIRE(std::distance(opposite.begin(), opposite.end()) == 1);
  const auto& [state, amplitude] = *opposite.begin();
  CHECK(std::abs(amplitude) == 1.0);
  CHECK(state.occupied(registry.index_of(Lead::L, 0, Spin::Up)));
  CHECK(state.occupied(registry.index_of(Lead::L, 1, Spin::Down)));
  CHECK(state.particle_count() == 2);

  const StateVector same = build_initial_state(config, registry, {Spin::Up, Spin::Up});
  REQUIRE(std::distance(same.begin(), same.end()) == 1);
  CHECK(same.begin()->first.occupied(registry.index_of(Lead::L, 1, Spin::Up)));

  EnergyConfig degenerate = config;
  degenerate.Delta_L = 0.0;
  const ModeRegistry degenerate_registry = build_registry(degenerate);
  CHECK_THROWS_AS(build_initial_state(degenerate, degenerate_registry, {Spin::Up, Spin::Up}),
                  ConfigError);
  CHECK_NOTHROW(build_initial_state(degenerate, degenerate_registry, {Spin::Up, Spin::Down}));
}
