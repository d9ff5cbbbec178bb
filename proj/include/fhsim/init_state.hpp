#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fhsim/lattice.hpp"

namespace fhsim {

/// Dimer-covering initial state: maximally entangled S_z = 0 pairs on
/// JW-adjacent sites, broken by holon (empty) and doublon (doubly occupied)
/// sites.  Each triplet pair (a, b) with a < b in snake order occupies its
/// four modes in one of two Fock patterns,
///   A: a-up and b-down occupied   (amplitude +1/sqrt(2))
///   B: b-up and a-down occupied   (amplitude -1/sqrt(2)),
/// so the full state has 2^{n_triplets} signed Fock terms.
struct InitState {
  std::vector<std::pair<int, int>> triplets;
  std::vector<int> holons;
  std::vector<int> doublons;

  int n_triplets() const { return static_cast<int>(triplets.size()); }
  /// Particle number in each spin sector (equal by construction).
  int sector_particles() const {
    return n_triplets() + static_cast<int>(doublons.size());
  }
  /// Every site covered exactly once, within lattice range.
  void validate(const Lattice& lat) const;

  /// Mean occupation of mode jw at t = 0 (1/2 on triplet modes, 0/1 on
  /// holon/doublon modes).
  double mode_density(const Lattice& lat, int jw) const;
  /// Joint occupation <n_a n_b> at t = 0.
  double mode_pair_density(const Lattice& lat, int jw_a, int jw_b) const;

  /// Occupied-mode mask (two 64-bit words, mode 0 = bit 0 of word 0) of the
  /// Fock term selected by `pattern` (bit k = 1 means triplet k in pattern B).
  std::pair<uint64_t, uint64_t> fock_mask(const Lattice& lat, uint32_t pattern) const;
  /// Sign of that Fock term: (-1)^{popcount(pattern)}.
  double fock_sign(uint32_t pattern) const;
};

/// The experiment layout on 4 x 7: holon at site 0, doublon at site 13,
/// triplets on consecutive snake pairs (1,2), (3,4), ..., (26,27).
InitState paper_init_state();

/// Deterministic dimer covering for any lattice, holding the per-sector
/// particle number even (the circuit's boundary rewrite assumes even parity).
/// Even site count: holon at 0, one doublon, pairs in snake order; when that
/// leaves odd parity the doublon is replaced by two extra holons.  Odd site
/// count: two holons, one doublon, pairs on the rest, with the same parity
/// fix-up.
InitState default_init_state(const Lattice& lat);

}  // namespace fhsim
