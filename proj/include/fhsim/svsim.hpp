#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "fhsim/circuit.hpp"
#include "fhsim/init_state.hpp"
#include "fhsim/lattice.hpp"
#include "fhsim/shots.hpp"

namespace fhsim::sv {

/// Dense statevector, basis index z has mode k in bit k.  Capped at 24
/// qubits; the largest oracle case in use is 3x3 spinful (18 qubits).
using State = Eigen::VectorXcd;

constexpr int kMaxQubits = 24;

State zero_state(int n_qubits);

/// Sparse JW Hamiltonian applied matrix-free: hopping terms
/// coeff * (c^dag_p c_q + h.c.) with the Z string between p and q, plus
/// density-density terms coeff * n_p n_q.
struct Hamiltonian {
  int n_modes = 0;
  struct Hop {
    int p, q;
    double coeff;
  };
  struct Density {
    int p, q;
    double coeff;
  };
  std::vector<Hop> hops;
  std::vector<Density> densities;

  void apply(const State& in, State& out) const;
  /// Crude upper bound on the spectral radius (sum of term norms).
  double norm_bound() const;
};

/// Eq.-(1) Hamiltonian of the lattice: -J e^{i phi} hops (J = 1, phases
/// 0/pi folded into the sign) and U n_up n_down per site.
Hamiltonian hubbard_hamiltonian(const Lattice& lat, double u);

double expectation(const Hamiltonian& h, const State& psi);

/// exp(-i H t) |psi> by adaptive Lanczos propagation, tolerance ~1e-12.
State evolve(const Hamiltonian& h, const State& psi, double t);

State evolve_exact(const Lattice& lat, const State& psi, double t, double u);

State run_circuit(const Circuit& circuit, const State& psi);

/// <prod_{k in mask} Z_k>.
double z_string_expectation(const State& psi, std::uint64_t mask);
/// All Z-string expectations for the given mode masks at once.
std::vector<double> z_string_expectations(const State& psi,
                                          const std::vector<std::uint64_t>& masks);

std::vector<Bitstring> sample(const State& psi, int n_shots, std::uint64_t seed);

struct NoiseModel {
  double p2 = 1e-3;    // two-qubit depolarizing per Rzz
  double p1 = 3e-5;    // one-qubit depolarizing per U1q
  double spam = 1e-3;  // readout bit flip
};

/// Monte-Carlo Pauli-insertion trajectories; one sampled bitstring per
/// trajectory, readout flips applied last.  Deterministic per seed.
std::vector<Bitstring> noisy_run(const Circuit& circuit, const NoiseModel& noise,
                                 int n_shots, std::uint64_t seed);

struct TrotterErrorRow {
  double time = 0.0;
  double mean_error = 0.0;
  double max_error = 0.0;
  double infidelity = 0.0;  // 2 sqrt(1 - |<psi|psi'>|^2)
};

/// Compares exact and Trotterized evolution from the dimer initial state on
/// all Pauli-Z strings up to weight_cap (or an explicit mask list).
std::vector<TrotterErrorRow> trotter_error_report(
    const Lattice& lat, const InitState& init, double u, int steps,
    const std::vector<double>& times, int weight_cap,
    const std::vector<std::uint64_t>& explicit_masks = {});

/// Mode-subset masks of weight 1..weight_cap over n_modes (ascending weight).
std::vector<std::uint64_t> z_masks_up_to_weight(int n_modes, int weight_cap);

}  // namespace fhsim::sv
