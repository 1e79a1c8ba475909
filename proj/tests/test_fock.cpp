#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "cotunnel/fock.hpp"

using namespace cotunnel;

namespace {

ModeRegistry make_registry(int n_modes) {
  std::vector<Mode> modes;
  for (int i = 0; i < n_modes; ++i) {
    modes.push_back({Lead::L, i, Spin::Up, 0.1 * i});
  }
  return ModeRegistry(std::move(modes));
}

// Independent sign oracle: parity of the bubble sort that moves the new index
// from the front of the ordered occupied list into place.
int insertion_sign(std::uint64_t bits, int index) {
  std::vector<int> occupied;
  for (int i = 0; i < 64; ++i) {
    if ((bits >> i) & 1u) occupied.push_back(i);
  }
  std::vector<int> sequence;
  sequence.push_back(index);
  sequence.insert(sequence.end(), occupied.begin(), occupied.end());
  int swaps = 0;
  for (std::size_t i = 0; i + 1 < sequence.size(); ++i) {
    for (std::size_t j = 0; j + 1 < sequence.size() - i; ++j) {
      if (sequence[j] > sequence[j + 1]) {
        std::swap(sequence[j], sequence[j + 1]);
        ++swaps;
      }
    }
  }
  return swaps % 2 == 0 ? +1 : -1;
}

}  // namespace

TEST_CASE("registry validation") {
  CHECK_THROWS_AS(ModeRegistry({{Lead::L, 0, Spin::Up, 0.0}, {Lead::L, 0, Spin::Up, 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ModeRegistry({{Lead::L, 0, Spin::Up, std::nan("")}}), std::invalid_argument);
  std::vector<Mode> too_many;
  for (int i = 0; i < 64; ++i) too_many.push_back({Lead::L, i, Spin::Up, 0.0});
  CHECK_THROWS_AS(ModeRegistry(std::move(too_many)), std::invalid_argument);

  const ModeRegistry registry = make_registry(4);
  CHECK(registry.index_of(Lead::L, 2, Spin::Up) == 2);
  CHECK_THROWS_AS(registry.index_of(Lead::R1, 0, Spin::Up), std::out_of_range);
}

TEST_CASE("basis enumeration") {
  const ModeRegistry registry = make_registry(4);
  const auto vacuum = enumerate_basis(registry, 0);
  REQUIRE(vacuum.size() == 1);
  CHECK(vacuum[0].bits == 0);

  const auto full = enumerate_basis(registry, 4);
  REQUIRE(full.size() == 1);
  CHECK(full[0].bits == 0b1111);

  const auto pairs = enumerate_basis(registry, 2);
  CHECK(pairs.size() == 6);
  CHECK(std::is_sorted(pairs.begin(), pairs.end()));

  CHECK_THROWS_AS(enumerate_basis(registry, 5), std::out_of_range);
  CHECK_THROWS_AS(enumerate_basis(registry, -1), std::out_of_range);
}

TEST_CASE("sector partition of the full space") {
  const ModeRegistry registry = make_registry(7);
  std::vector<FockState> all;
  for (int n = 0; n <= 7; ++n) {
    const auto sector = enumerate_basis(registry, n);
    for (const FockState& s : sector) CHECK(s.particle_count() == n);
    all.insert(all.end(), sector.begin(), sector.end());
  }
  CHECK(all.size() == 128);
  std::sort(all.begin(), all.end());
  CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
}

TEST_CASE("creation and annihilation basics") {
  const ModeRegistry registry = make_registry(4);
  const FockState vacuum{0};

  const auto created = apply_creation(registry, vacuum, 2);
  REQUIRE(created.has_value());
  CHECK(created->state.bits == 0b0100);
  CHECK(created->sign == +1);

  CHECK_FALSE(apply_creation(registry, created->state, 2).has_value());
  CHECK_FALSE(apply_annihilation(registry, vacuum, 1).has_value());

  const auto destroyed = apply_annihilation(registry, created->state, 2);
  REQUIRE(destroyed.has_value());
  CHECK(destroyed->state.bits == 0);
  CHECK(destroyed->sign == +1);

  CHECK_THROWS_AS(apply_creation(registry, vacuum, 4), std::out_of_range);
  CHECK_THROWS_AS(apply_annihilation(registry, vacuum, -1), std::out_of_range);
}

TEST_CASE("signs match the ordered-product oracle") {
  const ModeRegistry registry = make_registry(8);
  for (std::uint64_t bits = 0; bits < 256; ++bits) {
    for (int index = 0; index < 8; ++index) {
      const auto result = apply_creation(registry, FockState{bits}, index);
      if ((bits >> index) & 1u) {
        CHECK_FALSE(result.has_value());
      } else {
        REQUIRE(result.has_value());
        CHECK(result->sign == insertion_sign(bits, index));
      }
    }
  }
}

TEST_CASE("paired creations flip sign under exchange") {
  const ModeRegistry registry = make_registry(6);
  for (std::uint64_t bits = 0; bits < 64; ++bits) {
    for (int p = 0; p < 6; ++p) {
      for (int q = 0; q < 6; ++q) {
        if (p == q) continue;
        const auto first = apply_creation(registry, FockState{bits}, q);
        const auto pq = first ? apply_creation(registry, first->state, p) : std::nullopt;
        const auto second = apply_creation(registry, FockState{bits}, p);
        const auto qp = second ? apply_creation(registry, second->state, q) : std::nullopt;
        if (!pq) {
          CHECK(!qp);
          continue;
        }
        REQUIRE(qp.has_value());
        CHECK(pq->state == qp->state);
        CHECK(first->sign * pq->sign == -second->sign * qp->sign);
      }
    }
  }
}

TEST_CASE("anticommutation relations, exhaustive") {
  const ModeRegistry registry = make_registry(8);
  auto two_step = [&](FockState s, int first, bool create_first, int second, bool create_second)
      -> std::optional<SignedState> {
    const auto r1 = create_first ? apply_creation(registry, s, first)
                                 : apply_annihilation(registry, s, first);
    if (!r1) return std::nullopt;
    const auto r2 = create_second ? apply_creation(registry, r1->state, second)
                                  : apply_annihilation(registry, r1->state, second);
    if (!r2) return std::nullopt;
    return SignedState{r2->state, r1->sign * r2->sign};
  };

  for (std::uint64_t bits = 0; bits < 256; ++bits) {
    const FockState s{bits};
    for (int p = 0; p < 8; ++p) {
      for (int q = 0; q < 8; ++q) {
        for (bool create : {false, true}) {
          StateVector acc;
          if (auto r = two_step(s, q, create, p, create)) acc.accumulate(r->state, r->sign);
          if (auto r = two_step(s, p, create, q, create)) acc.accumulate(r->state, r->sign);
          CHECK(acc.norm() == 0.0);
        }
        StateVector acc;
        if (auto r = two_step(s, q, true, p, false)) acc.accumulate(r->state, r->sign);
        if (auto r = two_step(s, p, false, q, true)) acc.accumulate(r->state, r->sign);
        acc.accumulate(s, p == q ? -1.0 : 0.0);
        CHECK(acc.norm() == 0.0);
      }
    }
  }
}

TEST_CASE("state vector accumulation") {
  StateVector v;
  CHECK(v.empty());
  v.accumulate(FockState{0b11}, {0.6, 0.0});
  v.accumulate(FockState{0b11}, {0.0, 0.8});
  CHECK(v.amplitude(FockState{0b11}) == std::complex<double>{0.6, 0.8});
  CHECK(v.amplitude(FockState{0b01}) == std::complex<double>{0.0, 0.0});
  CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-15));
}
