#include "cotunnel/fock.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <tuple>

namespace cotunnel {

std::string to_string(Lead lead) {
  switch (lead) {
    case Lead::L: return "L";
    case Lead::R1: return "R1";
    case Lead::R2: return "R2";
    case Lead::Dot: return "dot";
  }
  return "?";
}

std::string to_string(Spin spin) { return spin == Spin::Up ? "up" : "down"; }

ModeRegistry::ModeRegistry(std::vector<Mode> modes) : modes_(std::move(modes)) {
  if (modes_.size() > kMaxModes) {
    throw std::invalid_argument("mode registry exceeds " + std::to_string(kMaxModes) + " modes");
  }
  std::set<std::tuple<Lead, int, Spin>> seen;
  for (const Mode& m : modes_) {
    if (!std::isfinite(m.energy)) {
      throw std::invalid_argument("mode energy is not finite");
    }
    if (!seen.insert({m.lead, m.slot, m.spin}).second) {
      throw std::invalid_argument("duplicate (lead, slot, spin) in mode registry");
    }
  }
}

int ModeRegistry::index_of(Lead lead, int slot, Spin spin) const {
  for (int i = 0; i < size(); ++i) {
    const Mode& m = modes_[static_cast<std::size_t>(i)];
    if (m.lead == lead && m.slot == slot && m.spin == spin) return i;
  }
  throw std::out_of_range("no such mode in registry");
}

namespace {

void check_index(const ModeRegistry& registry, int mode_index) {
  if (mode_index < 0 || mode_index >= registry.size()) {
    throw std::out_of_range("mode index out of range");
  }
}

// Parity of the occupied modes strictly below mode_index.
int exchange_sign(std::uint64_t bits, int mode_index) {
  const std::uint64_t below = bits & ((std::uint64_t{1} << mode_index) - 1);
  return (std::popcount(below) & 1) ? -1 : +1;
}

}  // namespace

std::optional<SignedState> apply_creation(const ModeRegistry& registry, FockState s, int mode_index) {
  check_index(registry, mode_index);
  if (s.occupied(mode_index)) return std::nullopt;
  return SignedState{FockState{s.bits | (std::uint64_t{1} << mode_index)}, exchange_sign(s.bits, mode_index)};
}

std::optional<SignedState> apply_annihilation(const ModeRegistry& registry, FockState s, int mode_index) {
  check_index(registry, mode_index);
  if (!s.occupied(mode_index)) return std::nullopt;
  return SignedState{FockState{s.bits & ~(std::uint64_t{1} << mode_index)}, exchange_sign(s.bits, mode_index)};
}

std::vector<FockState> enumerate_basis(const ModeRegistry& registry, int n_particles) {
  const int n = registry.size();
  if (n_particles < 0 || n_particles > n) {
    throw std::out_of_range("particle count outside [0, mode count]");
  }
  std::vector<FockState> states;
  if (n_particles == 0) {
    states.push_back(FockState{0});
    return states;
  }
  // Gosper's hack: next bit pattern with the same popcount, ascending.
  std::uint64_t v = (std::uint64_t{1} << n_particles) - 1;
  const std::uint64_t limit = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  while (v <= limit) {
    states.push_back(FockState{v});
    const std::uint64_t c = v & (~v + 1);
    const std::uint64_t r = v + c;
    if (r == 0) break;
    v = (((r ^ v) >> 2) / c) | r;
  }
  return states;
}

void StateVector::accumulate(FockState s, std::complex<double> amplitude) {
  auto [it, inserted] = amplitudes_.try_emplace(s, amplitude);
  if (!inserted) it->second += amplitude;
}

std::complex<double> StateVector::amplitude(FockState s) const {
  auto it = amplitudes_.find(s);
  return it == amplitudes_.end() ? std::complex<double>{0.0, 0.0} : it->second;
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const auto& [state, amp] : amplitudes_) sum += std::norm(amp);
  return std::sqrt(sum);
}

}  // namespace cotunnel
