#pragma once

// Fourth-order time-ordered perturbation engine.  Every nonzero sequence of
// four tunneling vertices (two lead->dot entries from L, one dot->lead exit to
// each of R1 and R2) applied to the two-electron input state is one time
// ordering; its amplitude is the product of fermionic signs over the resolvent
// denominators built from exact unperturbed energies,
//
//   amplitude = (prod signs) / prod_j (E_input - E_intermediate_j),
//
// reported in coupling-stripped units (the common product V_L^2 V_R1 V_R2 is
// divided out, i.e. never multiplied in).  Orderings related by exchanging the
// output leads form one path; paths are labeled I..VI by their denominator
// structure: the first-entering electron separates {I, II, III} (the
// E_L - Delta_L factor) from {IV, V, VI}, the absence of a doubly occupied dot
// picks I and IV, and whether the first exit carries the first-entered spin
// separates II from III and V from VI.

#include <array>
#include <complex>
#include <vector>

#include "cotunnel/closedform.hpp"
#include "cotunnel/fock.hpp"
#include "cotunnel/model.hpp"

namespace cotunnel {

struct Vertex {
  enum class Kind { In, Out };
  Kind kind;
  Lead lead;  // In: L, Out: R1 or R2
  int slot;
  Spin spin;
  double coupling;
};

struct Ordering {
  std::array<Vertex, 4> vertices;  // vertices[0] acts first
  std::array<double, 3> intermediate_energies;
  FockState final_state;
  std::complex<double> amplitude;  // coupling-stripped, includes the sign

  // Grouping keys.
  int first_in_slot = 0;             // 0: E_L+Delta_L electron entered first
  bool double_occupancy = false;     // an intermediate state pays the charging energy
  bool first_out_is_first_in = false;  // the first exit carries the first-entered spin
};

struct SpinDecomposition {
  std::complex<double> singlet;
  std::complex<double> triplet_m0;
  std::complex<double> triplet_up;
  std::complex<double> triplet_down;
};

struct PathAmplitude {
  PathLabel label;
  SpinDecomposition coeffs;
  std::vector<Ordering> orderings;  // the two members, exchange-related
};

// Every nonzero four-vertex ordering: 12 for opposite input spins, 4 (all
// enter-exit-enter-exit) for equal spins.
std::vector<Ordering> enumerate_orderings(const EnergyConfig& config, SpinPair spins);

// Recomputes the resolvent amplitude of an ordering from scratch.
std::complex<double> ordering_amplitude(const Ordering& ordering, const EnergyConfig& config);

// Pairs orderings by output-lead exchange and assigns labels; 6 paths for
// opposite spins, 2 (I and IV) for equal spins.
std::vector<PathAmplitude> group_into_paths(const std::vector<Ordering>& orderings,
                                            const EnergyConfig& config);

// Projects a state in the one-electron-per-output-lead sector onto the
// unnormalized singlet/triplet combinations:
//   singlet    = (A_{R1 up, R2 down} - A_{R1 down, R2 up}) / 2
//   triplet_m0 = (A_{R1 up, R2 down} + A_{R1 down, R2 up}) / 2
// and the raw equal-spin components.  Components outside that sector raise a
// sector-leak error.
SpinDecomposition spin_decompose(const StateVector& state, const ModeRegistry& registry);

// Sum of all ordering contributions, spin-decomposed.
SpinDecomposition total_output(const EnergyConfig& config, SpinPair spins);

double max_ordering_magnitude(const std::vector<Ordering>& orderings);

}  // namespace cotunnel
