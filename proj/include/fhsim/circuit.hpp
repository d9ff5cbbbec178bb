#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fhsim/init_state.hpp"
#include "fhsim/lattice.hpp"
#include "fhsim/schedule.hpp"

namespace fhsim {

/// Native gate.  U1q holds Z-Y-Z Euler angles (the unitary is
/// Rz(euler[0]) * Ry(euler[1]) * Rz(euler[2]) up to global phase);
/// RelabelSwap is a software relabelling, never a physical gate.
struct Gate {
  enum class Kind { U1q, Rzz, RelabelSwap, Measure };
  Kind kind = Kind::U1q;
  int q0 = -1;
  int q1 = -1;
  double angle = 0.0;                    // Rzz rotation angle
  std::array<double, 3> euler{0, 0, 0};  // U1q
  std::string tag;

  Eigen::Matrix2cd u1q_matrix() const;
};

/// Builds a U1q gate from an explicit 2x2 unitary (global phase dropped).
Gate make_u1q(int qubit, const Eigen::Matrix2cd& u, std::string tag);
Gate make_rzz(int q0, int q1, double angle, std::string tag);

struct CircuitMeta {
  int lx = 0, ly = 0;
  double t = 0.0;
  double u = 0.0;
  int steps = 0;
  std::int64_t twirl_seed = -1;  // -1: untwirled
  int n_up = -1, n_dn = -1;      // per-sector particle numbers
};

struct Circuit {
  int n_qubits = 0;
  CircuitMeta meta;
  std::vector<Gate> gates;

  std::string to_json() const;
  static Circuit from_json(const std::string& text);
};

struct GateCounts {
  int one_qubit = 0;
  int two_qubit = 0;
  std::map<std::string, int> by_tag;  // physical gates only
};

/// State preparation: one three-Rzz block per triplet pair, X on both modes
/// of each doublon site, holon sites untouched.  Pairs must be JW-adjacent.
Circuit triplet_prep_circuit(const Lattice& lat, const InitState& init);

/// Full second-order Trotter circuit (prep included unless include_prep is
/// false): swap-network hop ordering, FSWAPs merged with pending hops,
/// CZ-sandwich boundary hops for odd Ly, hop layers merged across step
/// junctions, and one onsite Rzz per site per step (kept at U = 0 with zero
/// angle).  Rejects odd per-sector particle number: the boundary rewrite
/// treats the sector parity as the constant +1.
Circuit trotter_circuit(const Lattice& lat, const InitState& init, double t,
                        double u, int steps, bool include_prep = true);

/// Closed-form two-qubit gate count of an N-step Trotter circuit (state
/// preparation excluded), matching the constructed circuits exactly.
int predicted_two_qubit_cost(int lx, int ly, int steps);

GateCounts gate_counts(const Circuit& circuit);

/// Conjugates every Rzz by an independent uniformly random two-qubit Pauli,
/// flipping the rotation sign when the Pauli anticommutes with ZZ.
Circuit pseudo_twirl(const Circuit& circuit, std::uint64_t seed);

/// Peephole pass: merges maximal runs of adjacent one-qubit gates into a
/// single U1q, drops identities and diagonal gates just before measurement.
/// Two-qubit gates are untouched.
Circuit compile_1q(const Circuit& circuit);

/// Net relabelling of the circuit: perm[q] is where the mode that started
/// on qubit q ends up.  Identity for any full trotter_circuit output.
std::vector<int> final_qubit_permutation(const Circuit& circuit);

}  // namespace fhsim
