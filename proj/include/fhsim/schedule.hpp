#pragma once

#include <vector>

#include "fhsim/lattice.hpp"

namespace fhsim {

/// One abstract operation of the second-order swap-network Trotter circuit.
/// Qubit indices are physical positions in the full 2L register (spin-up
/// sector at [0, L), spin-down at [L, 2L)); site labels track which lattice
/// bond a hop implements regardless of where its modes currently sit.
struct ScheduleEvent {
  enum class Kind { Hop, Fswap, Onsite, BoundaryCz };
  Kind kind = Kind::Hop;
  int q0 = -1, q1 = -1;
  int site_a = -1, site_b = -1;  // Hop: bond endpoints; Onsite: site_a
  Spin sector = Spin::Up;
  double flux_sign = 1.0;        // exp(i phi) in {+1, -1}
  bool parity_flip = false;      // JW-loop representation (sign of the hop)
  bool merged_fswap = false;     // hop fused with an FSWAP of the same pair
  bool boundary = false;         // part of the odd-Ly boundary block
  double dt_factor = 0.5;        // fraction of (t / steps); 1.0 when merged
                                 // across a step junction, and for Onsite
  int layer = 0;                 // monotone id; same-layer events commute
};

/// Full N-step schedule: per step, the forward swap-network pass, the
/// boundary block and onsite layer, then the mirrored backward pass.  The
/// final hop layer of each step is merged into the first hop layer of the
/// next (dt_factor 1.0 there), and for odd Ly the boundary CZ layers
/// adjacent to the onsite layer are already cancelled.
std::vector<ScheduleEvent> trotter_schedule(const Lattice& lat, int steps);

}  // namespace fhsim
