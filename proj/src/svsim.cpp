#include "fhsim/svsim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace fhsim::sv {

namespace {

using cplx = std::complex<double>;

void check_size(int n_qubits) {
  if (n_qubits > kMaxQubits)
    throw std::invalid_argument("statevector capped at 24 qubits");
  if (n_qubits < 1) throw std::invalid_argument("need at least one qubit");
}

inline int parity64(std::uint64_t x) { return __builtin_parityll(x); }

void apply_1q(State& psi, int q, const Eigen::Matrix2cd& u) {
  const std::int64_t n = psi.size();
  const std::int64_t bit = std::int64_t{1} << q;
  for (std::int64_t z = 0; z < n; ++z) {
    if (z & bit) continue;
    cplx a = psi[z], b = psi[z | bit];
    psi[z] = u(0, 0) * a + u(0, 1) * b;
    psi[z | bit] = u(1, 0) * a + u(1, 1) * b;
  }
}

void apply_rzz(State& psi, int q0, int q1, double angle) {
  const std::int64_t n = psi.size();
  const std::int64_t b0 = std::int64_t{1} << q0, b1 = std::int64_t{1} << q1;
  const cplx same = std::exp(cplx(0, -angle / 2));
  const cplx diff = std::exp(cplx(0, angle / 2));
  for (std::int64_t z = 0; z < n; ++z) {
    bool e0 = z & b0, e1 = z & b1;
    psi[z] *= (e0 == e1) ? same : diff;
  }
}

void apply_relabel(State& psi, int q0, int q1) {
  const std::int64_t n = psi.size();
  const std::int64_t b0 = std::int64_t{1} << q0, b1 = std::int64_t{1} << q1;
  for (std::int64_t z = 0; z < n; ++z) {
    bool e0 = z & b0, e1 = z & b1;
    if (e0 && !e1) {
      std::int64_t z2 = (z & ~b0) | b1;
      std::swap(psi[z], psi[z2]);
    }
  }
}

}  // namespace

State zero_state(int n_qubits) {
  check_size(n_qubits);
  State psi = State::Zero(std::int64_t{1} << n_qubits);
  psi[0] = 1.0;
  return psi;
}

void Hamiltonian::apply(const State& in, State& out) const {
  const std::int64_t n = in.size();
  out.setZero();
  for (const Density& d : densities) {
    const std::int64_t bp = std::int64_t{1} << d.p, bq = std::int64_t{1} << d.q;
    for (std::int64_t z = 0; z < n; ++z)
      if ((z & bp) && (z & bq)) out[z] += d.coeff * in[z];
  }
  for (const Hop& h : hops) {
    int p = std::min(h.p, h.q), q = std::max(h.p, h.q);
    const std::int64_t bp = std::int64_t{1} << p, bq = std::int64_t{1} << q;
    const std::uint64_t between = ((std::uint64_t{1} << q) - 1) & ~((std::uint64_t{1} << (p + 1)) - 1);
    for (std::int64_t z = 0; z < n; ++z) {
      if (!(z & bq) || (z & bp)) continue;
      std::int64_t z2 = (z ^ bq) | bp;
      double s = parity64(static_cast<std::uint64_t>(z) & between) ? -h.coeff : h.coeff;
      out[z2] += s * in[z];
      out[z] += s * in[z2];
    }
  }
}

double Hamiltonian::norm_bound() const {
  double b = 0.0;
  for (const Hop& h : hops) b += 2.0 * std::abs(h.coeff);
  for (const Density& d : densities) b += std::abs(d.coeff);
  return b;
}

Hamiltonian hubbard_hamiltonian(const Lattice& lat, double u) {
  Hamiltonian h;
  h.n_modes = lat.n_modes();
  int l = lat.n_sites();
  for (const Bond& b : lat.bonds()) {
    double coeff = -(b.phase > 1.0 ? -1.0 : 1.0);  // -J e^{i phi}, J = 1
    h.hops.push_back({b.a, b.b, coeff});
    h.hops.push_back({b.a + l, b.b + l, coeff});
  }
  if (u != 0.0)
    for (int s = 0; s < l; ++s) h.densities.push_back({s, s + l, u});
  return h;
}

double expectation(const Hamiltonian& h, const State& psi) {
  State work(psi.size());
  h.apply(psi, work);
  return psi.dot(work).real();
}

namespace {

// One Lanczos step exp(-i dt H) v; halves dt recursively if the Krylov
// residual estimate exceeds tol.
State krylov_step(const Hamiltonian& h, const State& v, double dt, double tol,
                  int depth = 0) {
  const int m_max = std::min<std::int64_t>(30, v.size());
  const std::int64_t dim = v.size();
  Eigen::MatrixXcd basis(dim, m_max);
  Eigen::VectorXd alpha(m_max), beta(m_max);
  double vnorm = v.norm();
  basis.col(0) = v / vnorm;
  State w(dim);
  int m = m_max;
  double beta_last = 0.0;
  for (int j = 0; j < m_max; ++j) {
    h.apply(basis.col(j), w);
    if (j > 0) w -= beta[j - 1] * basis.col(j - 1);
    alpha[j] = basis.col(j).dot(w).real();
    w -= alpha[j] * basis.col(j);
    double b = w.norm();
    beta[j] = b;
    if (b < 1e-14 || j + 1 == m_max) {
      m = j + 1;
      beta_last = b;
      break;
    }
    basis.col(j + 1) = w / b;
  }
  Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
  for (int j = 0; j < m; ++j) {
    tri(j, j) = alpha[j];
    if (j + 1 < m) tri(j, j + 1) = tri(j + 1, j) = beta[j];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
  Eigen::VectorXcd phases(m);
  for (int j = 0; j < m; ++j) phases[j] = std::exp(cplx(0, -dt * es.eigenvalues()[j]));
  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(m);
  e1[0] = 1.0;
  Eigen::VectorXcd small = es.eigenvectors() *
                           (phases.array() * (es.eigenvectors().transpose() * e1).array()).matrix();
  double err = beta_last * std::abs(small[m - 1]) * std::abs(dt);
  if (err > tol && depth < 30) {
    State half = krylov_step(h, v, dt / 2, tol / 2, depth + 1);
    return krylov_step(h, half, dt / 2, tol / 2, depth + 1);
  }
  return vnorm * (basis.leftCols(m) * small);
}

}  // namespace

State evolve(const Hamiltonian& h, const State& psi, double t) {
  if (t == 0.0) return psi;
  double bound = std::max(1.0, h.norm_bound());
  int nsub = std::max(1, static_cast<int>(std::ceil(std::abs(t) * bound / 15.0)));
  State state = psi;
  for (int k = 0; k < nsub; ++k) state = krylov_step(h, state, t / nsub, 1e-12);
  return state;
}

State evolve_exact(const Lattice& lat, const State& psi, double t, double u) {
  check_size(lat.n_modes());
  if (psi.size() != (std::int64_t{1} << lat.n_modes()))
    throw std::invalid_argument("state size does not match lattice");
  return evolve(hubbard_hamiltonian(lat, u), psi, t);
}

State run_circuit(const Circuit& circuit, const State& psi) {
  check_size(circuit.n_qubits);
  if (psi.size() != (std::int64_t{1} << circuit.n_qubits))
    throw std::invalid_argument("state size does not match circuit");
  State state = psi;
  for (const Gate& g : circuit.gates) {
    switch (g.kind) {
      case Gate::Kind::U1q:
        apply_1q(state, g.q0, g.u1q_matrix());
        break;
      case Gate::Kind::Rzz:
        apply_rzz(state, g.q0, g.q1, g.angle);
        break;
      case Gate::Kind::RelabelSwap:
        apply_relabel(state, g.q0, g.q1);
        break;
      case Gate::Kind::Measure:
        break;
    }
  }
  return state;
}

double z_string_expectation(const State& psi, std::uint64_t mask) {
  double v = 0.0;
  for (std::int64_t z = 0; z < psi.size(); ++z) {
    double p = std::norm(psi[z]);
    v += parity64(static_cast<std::uint64_t>(z) & mask) ? -p : p;
  }
  return v;
}

std::vector<double> z_string_expectations(const State& psi,
                                          const std::vector<std::uint64_t>& masks) {
  std::vector<double> out(masks.size(), 0.0);
  for (std::int64_t z = 0; z < psi.size(); ++z) {
    double p = std::norm(psi[z]);
    if (p == 0.0) continue;
    for (size_t k = 0; k < masks.size(); ++k)
      out[k] += parity64(static_cast<std::uint64_t>(z) & masks[k]) ? -p : p;
  }
  return out;
}

std::vector<Bitstring> sample(const State& psi, int n_shots, std::uint64_t seed) {
  std::vector<double> cdf(static_cast<size_t>(psi.size()));
  double acc = 0.0;
  for (std::int64_t z = 0; z < psi.size(); ++z) {
    acc += std::norm(psi[z]);
    cdf[static_cast<size_t>(z)] = acc;
  }
  int n_bits = 0;
  while ((std::int64_t{1} << n_bits) < psi.size()) ++n_bits;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, acc);
  std::vector<Bitstring> shots;
  shots.reserve(static_cast<size_t>(n_shots));
  for (int s = 0; s < n_shots; ++s) {
    double r = uni(rng);
    auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
    std::uint64_t z = static_cast<std::uint64_t>(it - cdf.begin());
    if (z >= static_cast<std::uint64_t>(psi.size())) z = static_cast<std::uint64_t>(psi.size()) - 1;
    Bitstring b;
    b.n_bits = n_bits;
    b.lo = z;
    shots.push_back(b);
  }
  return shots;
}

std::vector<Bitstring> noisy_run(const Circuit& circuit, const NoiseModel& noise,
                                 int n_shots, std::uint64_t seed) {
  check_size(circuit.n_qubits);
  if (noise.p1 < 0 || noise.p1 > 1 || noise.p2 < 0 || noise.p2 > 1 ||
      noise.spam < 0 || noise.spam > 1)
    throw std::invalid_argument("noise probabilities must lie in [0, 1]");
  Eigen::Matrix2cd pauli[3];
  pauli[0] << 0, 1, 1, 0;
  pauli[1] << 0, cplx(0, -1), cplx(0, 1), 0;
  pauli[2] << 1, 0, 0, -1;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::uniform_int_distribution<int> pick1(0, 2);
  std::uniform_int_distribution<int> pick2(1, 15);
  std::vector<Bitstring> shots;
  shots.reserve(static_cast<size_t>(n_shots));
  for (int s = 0; s < n_shots; ++s) {
    State state = zero_state(circuit.n_qubits);
    for (const Gate& g : circuit.gates) {
      switch (g.kind) {
        case Gate::Kind::U1q:
          apply_1q(state, g.q0, g.u1q_matrix());
          if (uni(rng) < noise.p1) apply_1q(state, g.q0, pauli[pick1(rng)]);
          break;
        case Gate::Kind::Rzz:
          apply_rzz(state, g.q0, g.q1, g.angle);
          if (uni(rng) < noise.p2) {
            int pp = pick2(rng);
            int pa = pp & 3, pb = pp >> 2;
            if (pa) apply_1q(state, g.q0, pauli[pa - 1]);
            if (pb) apply_1q(state, g.q1, pauli[pb - 1]);
          }
          break;
        case Gate::Kind::RelabelSwap:
          apply_relabel(state, g.q0, g.q1);
          break;
        case Gate::Kind::Measure:
          break;
      }
    }
    Bitstring z = sample(state, 1, rng())[0];
    for (int q = 0; q < circuit.n_qubits; ++q)
      if (uni(rng) < noise.spam) z.set_bit(q, !z.bit(q));
    shots.push_back(z);
  }
  return shots;
}

std::vector<std::uint64_t> z_masks_up_to_weight(int n_modes, int weight_cap) {
  if (n_modes > 63) throw std::invalid_argument("mask enumeration capped at 63 modes");
  std::vector<std::uint64_t> masks;
  // ascending weight, lexicographic within a weight
  std::vector<int> idx;
  auto emit = [&](auto&& self, int start, int left, std::uint64_t mask) -> void {
    if (left == 0) {
      masks.push_back(mask);
      return;
    }
    for (int i = start; i <= n_modes - left; ++i)
      self(self, i + 1, left - 1, mask | (std::uint64_t{1} << i));
  };
  for (int w = 1; w <= weight_cap; ++w) emit(emit, 0, w, 0);
  return masks;
}

std::vector<TrotterErrorRow> trotter_error_report(
    const Lattice& lat, const InitState& init, double u, int steps,
    const std::vector<double>& times, int weight_cap,
    const std::vector<std::uint64_t>& explicit_masks) {
  check_size(lat.n_modes());
  std::vector<std::uint64_t> masks =
      explicit_masks.empty() ? z_masks_up_to_weight(lat.n_modes(), weight_cap)
                             : explicit_masks;
  Circuit prep = triplet_prep_circuit(lat, init);
  State psi0 = run_circuit(prep, zero_state(lat.n_modes()));
  Hamiltonian h = hubbard_hamiltonian(lat, u);

  std::vector<double> sorted_times = times;
  std::sort(sorted_times.begin(), sorted_times.end());
  std::vector<TrotterErrorRow> report;
  State exact = psi0;
  double t_prev = 0.0;
  for (double t : sorted_times) {
    exact = evolve(h, exact, t - t_prev);
    t_prev = t;
    Circuit trot = trotter_circuit(lat, init, t, u, steps, /*include_prep=*/false);
    State approx = run_circuit(trot, psi0);
    std::vector<double> ve = z_string_expectations(exact, masks);
    std::vector<double> va = z_string_expectations(approx, masks);
    TrotterErrorRow row;
    row.time = t;
    for (size_t k = 0; k < masks.size(); ++k) {
      double err = std::abs(ve[k] - va[k]);
      row.mean_error += err;
      row.max_error = std::max(row.max_error, err);
    }
    row.mean_error /= static_cast<double>(masks.size());
    double overlap = std::abs(exact.dot(approx));
    row.infidelity = 2.0 * std::sqrt(std::max(0.0, 1.0 - overlap * overlap));
    report.push_back(row);
  }
  return report;
}

}  // namespace fhsim::sv
