#pragma once

// Fermionic Fock-space kernel over a small fixed mode registry: basis
// enumeration, creation/annihilation with exchange signs, and sparse
// state-vector algebra.  A basis state with occupied mode indices
// i1 < i2 < ... < ik denotes the ordered product a+_{i1} a+_{i2} ... a+_{ik}|0>,
// so applying a+_p / a_p picks up (-1)^(number of occupied modes below p).

#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cotunnel {

enum class Lead : std::uint8_t { L, R1, R2, Dot };
enum class Spin : std::uint8_t { Up, Down };

std::string to_string(Lead lead);
std::string to_string(Spin spin);

struct Mode {
  Lead lead;
  int slot;  // momentum slot within the lead, 0 for the dot
  Spin spin;
  double energy;
};

// Ordered mode list; the order is the canonical fermionic ordering and is
// immutable after construction (all sign conventions depend on it).
class ModeRegistry {
 public:
  static constexpr int kMaxModes = 63;

  explicit ModeRegistry(std::vector<Mode> modes);

  int size() const { return static_cast<int>(modes_.size()); }
  const Mode& mode(int index) const { return modes_.at(static_cast<std::size_t>(index)); }
  const std::vector<Mode>& modes() const { return modes_; }

  // Index of the mode with the given labels; throws std::out_of_range if absent.
  int index_of(Lead lead, int slot, Spin spin) const;

 private:
  std::vector<Mode> modes_;
};

// Occupation bitstring; bit i is the occupancy of registry mode i.
struct FockState {
  std::uint64_t bits = 0;

  int particle_count() const { return std::popcount(bits); }
  bool occupied(int index) const { return (bits >> index) & 1u; }

  friend auto operator<=>(const FockState&, const FockState&) = default;
};

struct SignedState {
  FockState state;
  int sign;  // +1 or -1
};

// a+_i |s>; nullopt when the mode is already occupied (Pauli exclusion).
std::optional<SignedState> apply_creation(const ModeRegistry& registry, FockState s, int mode_index);

// a_i |s>; nullopt when the mode is empty.
std::optional<SignedState> apply_annihilation(const ModeRegistry& registry, FockState s, int mode_index);

// All states with exactly n_particles occupied modes, in ascending bit-pattern
// order.
std::vector<FockState> enumerate_basis(const ModeRegistry& registry, int n_particles);

// Sparse amplitude map over Fock basis states.
class StateVector {
 public:
  using Map = std::map<FockState, std::complex<double>>;

  void accumulate(FockState s, std::complex<double> amplitude);
  std::complex<double> amplitude(FockState s) const;
  double norm() const;
  bool empty() const { return amplitudes_.empty(); }

  Map::const_iterator begin() const { return amplitudes_.begin(); }
  Map::const_iterator end() const { return amplitudes_.end(); }

 private:
  Map amplitudes_;
};

}  // namespace cotunnel
