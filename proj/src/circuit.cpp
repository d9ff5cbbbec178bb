#include "fhsim/circuit.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace fhsim {

namespace {

constexpr double kPi = 3.14159265358979323846;
using Eigen::Matrix2cd;
using cplx = std::complex<double>;

Matrix2cd rz(double a) {
  Matrix2cd m = Matrix2cd::Zero();
  m(0, 0) = std::exp(cplx(0, -a / 2));
  m(1, 1) = std::exp(cplx(0, a / 2));
  return m;
}

Matrix2cd ry(double a) {
  Matrix2cd m;
  m << std::cos(a / 2), -std::sin(a / 2), std::sin(a / 2), std::cos(a / 2);
  return m;
}

Matrix2cd gate_h() {
  Matrix2cd m;
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

Matrix2cd gate_s(bool dagger) {
  Matrix2cd m = Matrix2cd::Identity();
  m(1, 1) = dagger ? cplx(0, -1) : cplx(0, 1);
  return m;
}

Matrix2cd gate_x() {
  Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Matrix2cd gate_y() {
  Matrix2cd m;
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

Matrix2cd gate_z() {
  Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

// Z-Y-Z Euler angles of u up to global phase.
std::array<double, 3> euler_zyz(const Matrix2cd& u) {
  cplx det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
  Matrix2cd v = u / std::sqrt(det);
  double beta = 2.0 * std::atan2(std::abs(v(1, 0)), std::abs(v(0, 0)));
  double apg = 0.0, amg = 0.0;  // alpha + gamma, alpha - gamma
  if (std::abs(v(0, 0)) > 1e-12) apg = -2.0 * std::arg(v(0, 0));
  if (std::abs(v(1, 0)) > 1e-12) amg = 2.0 * std::arg(v(1, 0));
  if (std::abs(v(0, 0)) <= 1e-12) return {amg, beta, 0.0};
  if (std::abs(v(1, 0)) <= 1e-12) return {apg, beta, 0.0};
  return {(apg + amg) / 2, beta, (apg - amg) / 2};
}

bool u2_is_identity(const Matrix2cd& u, double tol = 1e-10) {
  if (std::abs(u(0, 1)) > tol || std::abs(u(1, 0)) > tol) return false;
  return std::abs(u(0, 0) / u(1, 1) - 1.0) < tol;
}

bool u2_is_diagonal(const Matrix2cd& u, double tol = 1e-10) {
  return std::abs(u(0, 1)) < tol && std::abs(u(1, 0)) < tol;
}

}  // namespace

Eigen::Matrix2cd Gate::u1q_matrix() const {
  return rz(euler[0]) * ry(euler[1]) * rz(euler[2]);
}

Gate make_u1q(int qubit, const Matrix2cd& u, std::string tag) {
  Gate g;
  g.kind = Gate::Kind::U1q;
  g.q0 = qubit;
  g.euler = euler_zyz(u);
  g.tag = std::move(tag);
  return g;
}

Gate make_rzz(int q0, int q1, double angle, std::string tag) {
  if (q0 == q1) throw std::invalid_argument("Rzz requires distinct qubits");
  Gate g;
  g.kind = Gate::Kind::Rzz;
  g.q0 = q0;
  g.q1 = q1;
  g.angle = angle;
  g.tag = std::move(tag);
  return g;
}

namespace {

void emit_pair_1q(std::vector<Gate>& gates, int qa, int qb, const Matrix2cd& u,
                  const std::string& tag) {
  gates.push_back(make_u1q(qa, u, tag));
  gates.push_back(make_u1q(qb, u, tag));
}

// e^{i (XX + YY) t / 2} between JW-adjacent qubits, two Rzz gates.
void emit_hop(std::vector<Gate>& gates, int qa, int qb, double t, const std::string& tag) {
  emit_pair_1q(gates, qa, qb, gate_h(), tag);
  gates.push_back(make_rzz(qa, qb, -t, tag));
  emit_pair_1q(gates, qa, qb, gate_h(), tag);
  emit_pair_1q(gates, qa, qb, gate_s(true), tag);
  emit_pair_1q(gates, qa, qb, gate_h(), tag);
  gates.push_back(make_rzz(qa, qb, -t, tag));
  emit_pair_1q(gates, qa, qb, gate_h(), tag);
  emit_pair_1q(gates, qa, qb, gate_s(false), tag);
}

// Hop and FSWAP fused at the same two-Rzz cost as the hop alone.  The block
// equals HOP(t) * FSWAP exactly, so the mode transport happens inside the
// gates and no relabelling is emitted.
void emit_merged_hop_fswap(std::vector<Gate>& gates, int qa, int qb, double t,
                           const std::string& tag) {
  emit_pair_1q(gates, qa, qb, gate_h(), tag);
  gates.push_back(make_rzz(qa, qb, -t - kPi / 2, tag));
  emit_pair_1q(gates, qa, qb, gate_h(), tag);
  emit_pair_1q(gates, qa, qb, gate_s(true), tag);
  emit_pair_1q(gates, qa, qb, gate_h(), tag);
  gates.push_back(make_rzz(qa, qb, -t - kPi / 2, tag));
  emit_pair_1q(gates, qa, qb, gate_h(), tag);
}

// CZ up to global phase: Rzz(pi/2) * (Sdg x Sdg).
void emit_cz(std::vector<Gate>& gates, int qa, int qb, const std::string& tag) {
  emit_pair_1q(gates, qa, qb, gate_s(true), tag);
  gates.push_back(make_rzz(qa, qb, kPi / 2, tag));
}

void emit_fswap(std::vector<Gate>& gates, int qa, int qb) {
  emit_cz(gates, qa, qb, "fswap");
  Gate swap;
  swap.kind = Gate::Kind::RelabelSwap;
  swap.q0 = qa;
  swap.q1 = qb;
  swap.tag = "fswap";
  gates.push_back(swap);
}

}  // namespace

Circuit triplet_prep_circuit(const Lattice& lat, const InitState& init) {
  init.validate(lat);
  for (const auto& [a, b] : init.triplets) {
    if (std::abs(a - b) != 1)
      throw std::invalid_argument("triplet pairs must be JW-adjacent sites");
    // snake-adjacent site indices are lattice neighbours by construction
  }
  Circuit c;
  c.n_qubits = lat.n_modes();
  c.meta.lx = lat.lx();
  c.meta.ly = lat.ly();
  c.meta.n_up = init.sector_particles();
  c.meta.n_dn = init.sector_particles();
  auto& g = c.gates;
  for (const auto& [a0, b0] : init.triplets) {
    int a = std::min(a0, b0), b = std::max(a0, b0);
    int q1 = lat.jw_index(a, Spin::Up);
    int q2 = lat.jw_index(b, Spin::Up);
    int q3 = lat.jw_index(a, Spin::Down);
    int q4 = lat.jw_index(b, Spin::Down);
    for (int q : {q1, q2, q3, q4}) g.push_back(make_u1q(q, gate_h(), "prep"));
    g.push_back(make_rzz(q1, q2, kPi / 2, "prep"));
    emit_pair_1q(g, q1, q2, gate_s(true), "prep");
    g.push_back(make_u1q(q2, gate_h(), "prep"));
    g.push_back(make_rzz(q2, q3, kPi / 2, "prep"));
    emit_pair_1q(g, q2, q3, gate_s(true), "prep");
    g.push_back(make_u1q(q2, gate_x(), "prep"));
    g.push_back(make_u1q(q3, gate_h(), "prep"));
    g.push_back(make_rzz(q3, q4, kPi / 2, "prep"));
    emit_pair_1q(g, q3, q4, gate_s(true), "prep");
    g.push_back(make_u1q(q3, gate_y(), "prep"));
    g.push_back(make_u1q(q4, gate_h(), "prep"));
  }
  for (int d : init.doublons) {
    g.push_back(make_u1q(lat.jw_index(d, Spin::Up), gate_x(), "prep"));
    g.push_back(make_u1q(lat.jw_index(d, Spin::Down), gate_x(), "prep"));
  }
  return c;
}

Circuit trotter_circuit(const Lattice& lat, const InitState& init, double t,
                        double u, int steps, bool include_prep) {
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (t < 0) throw std::invalid_argument("time must be >= 0");
  init.validate(lat);
  if (init.sector_particles() % 2 != 0)
    throw std::invalid_argument(
        "odd per-sector particle number: boundary parity rewrite is invalid");

  Circuit c;
  if (include_prep) {
    c = triplet_prep_circuit(lat, init);
  } else {
    c.n_qubits = lat.n_modes();
    c.meta.lx = lat.lx();
    c.meta.ly = lat.ly();
    c.meta.n_up = init.sector_particles();
    c.meta.n_dn = init.sector_particles();
  }
  c.meta.t = t;
  c.meta.u = u;
  c.meta.steps = steps;

  const double dt = t / steps;
  for (const ScheduleEvent& e : trotter_schedule(lat, steps)) {
    switch (e.kind) {
      case ScheduleEvent::Kind::Hop: {
        double tau = e.flux_sign * (e.parity_flip ? -1.0 : 1.0) * e.dt_factor * dt;
        std::string tag = e.boundary ? "boundary-hop"
                          : e.merged_fswap ? "hopswap"
                                           : "hop";
        if (e.merged_fswap) emit_merged_hop_fswap(c.gates, e.q0, e.q1, tau, tag);
        else emit_hop(c.gates, e.q0, e.q1, tau, tag);
        break;
      }
      case ScheduleEvent::Kind::Fswap:
        emit_fswap(c.gates, e.q0, e.q1);
        break;
      case ScheduleEvent::Kind::BoundaryCz:
        emit_cz(c.gates, e.q0, e.q1, "boundary-cz");
        break;
      case ScheduleEvent::Kind::Onsite:
        // e^{-i U dt Z Z / 4} up to global phase; kept at U = 0 so circuits
        // for different U are structurally identical.
        c.gates.push_back(make_rzz(e.q0, e.q1, u * dt / 2, "onsite"));
        break;
    }
  }
  for (int q = 0; q < c.n_qubits; ++q) {
    Gate m;
    m.kind = Gate::Kind::Measure;
    m.q0 = q;
    m.tag = "measure";
    c.gates.push_back(m);
  }
  return c;
}

int predicted_two_qubit_cost(int lx, int ly, int steps) {
  if (lx < 2 || ly < 2) throw std::invalid_argument("lattice dimensions must be >= 2");
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  bool ly_even = ly % 2 == 0;
  // Forward-pass network cost C_nw = n_f + 2 n_v + n_h (both spin sectors).
  int n_h = 2 * lx * ly;
  int n_v = ly_even ? 2 * lx * ly : 2 * lx * (ly - 1);
  int n_f;
  if (lx == 2) {
    // U_R is empty, so pairs must meet a second time through U_L to pick up
    // the doubled horizontal bonds of the two-column torus.
    n_f = 2 * lx * ly;
  } else if (lx % 2 == 0) {
    n_f = (2 * lx * lx - 5 * lx + 4) * ly;
  } else {
    n_f = (2 * lx * lx - 4 * lx + 2) * ly;
  }
  int c_nw = n_f + 2 * n_v + n_h;
  int c_b = ly_even ? 0 : lx * lx + 3 * lx;  // boundary block, inner CZs cancelled
  int c_c = lx * ly;                         // onsite Rzz per site
  int c_merge = ly_even ? 4 * ly : 4 * (ly - 1);
  return steps * (2 * c_nw + 2 * c_b + c_c - c_merge) + c_merge;
}

GateCounts gate_counts(const Circuit& circuit) {
  GateCounts gc;
  for (const Gate& g : circuit.gates) {
    if (g.kind == Gate::Kind::U1q) {
      ++gc.one_qubit;
      ++gc.by_tag[g.tag];
    } else if (g.kind == Gate::Kind::Rzz) {
      ++gc.two_qubit;
      ++gc.by_tag[g.tag];
    }
  }
  return gc;
}

Circuit pseudo_twirl(const Circuit& circuit, std::uint64_t seed) {
  const Matrix2cd paulis[4] = {Matrix2cd::Identity(), gate_x(), gate_y(), gate_z()};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(0, 15);
  Circuit out;
  out.n_qubits = circuit.n_qubits;
  out.meta = circuit.meta;
  out.meta.twirl_seed = static_cast<std::int64_t>(seed);
  for (const Gate& g : circuit.gates) {
    if (g.kind != Gate::Kind::Rzz) {
      out.gates.push_back(g);
      continue;
    }
    int draw = dist(rng);
    int pa = draw & 3, pb = draw >> 2;
    // X or Y on exactly one qubit anticommutes with ZZ.
    bool anti = ((pa == 1 || pa == 2) ? 1 : 0) ^ ((pb == 1 || pb == 2) ? 1 : 0);
    if (pa != 0) out.gates.push_back(make_u1q(g.q0, paulis[pa], "twirl"));
    if (pb != 0) out.gates.push_back(make_u1q(g.q1, paulis[pb], "twirl"));
    Gate r = g;
    if (anti) r.angle = -r.angle;
    out.gates.push_back(r);
    if (pa != 0) out.gates.push_back(make_u1q(g.q0, paulis[pa], "twirl"));
    if (pb != 0) out.gates.push_back(make_u1q(g.q1, paulis[pb], "twirl"));
  }
  return out;
}

Circuit compile_1q(const Circuit& circuit) {
  Circuit out;
  out.n_qubits = circuit.n_qubits;
  out.meta = circuit.meta;
  std::vector<Matrix2cd> pending(static_cast<size_t>(circuit.n_qubits),
                                 Matrix2cd::Identity());
  std::vector<bool> dirty(static_cast<size_t>(circuit.n_qubits), false);
  auto flush = [&](int q, bool before_measure) {
    auto& u = pending[static_cast<size_t>(q)];
    if (dirty[static_cast<size_t>(q)] && !u2_is_identity(u) &&
        !(before_measure && u2_is_diagonal(u))) {
      out.gates.push_back(make_u1q(q, u, "compiled"));
    }
    u = Matrix2cd::Identity();
    dirty[static_cast<size_t>(q)] = false;
  };
  // Z rotations commute through Rzz, so only the Ry(beta) Rz(gamma) part of
  // the pending unitary has to be emitted before a two-qubit gate; the
  // leftover Rz(alpha) rides along and merges with later gates.
  auto flush_before_rzz = [&](int q) {
    auto& u = pending[static_cast<size_t>(q)];
    if (!dirty[static_cast<size_t>(q)]) return;
    if (u2_is_diagonal(u)) return;  // commutes entirely
    auto e = euler_zyz(u);
    Matrix2cd emit = ry(e[1]) * rz(e[2]);
    if (!u2_is_identity(emit)) out.gates.push_back(make_u1q(q, emit, "compiled"));
    u = rz(e[0]);
    dirty[static_cast<size_t>(q)] = !u2_is_identity(u);
  };
  for (const Gate& g : circuit.gates) {
    switch (g.kind) {
      case Gate::Kind::U1q:
        pending[static_cast<size_t>(g.q0)] =
            g.u1q_matrix() * pending[static_cast<size_t>(g.q0)];
        dirty[static_cast<size_t>(g.q0)] = true;
        break;
      case Gate::Kind::Rzz:
        flush_before_rzz(g.q0);
        flush_before_rzz(g.q1);
        out.gates.push_back(g);
        break;
      case Gate::Kind::RelabelSwap:
        std::swap(pending[static_cast<size_t>(g.q0)], pending[static_cast<size_t>(g.q1)]);
        {
          auto d0 = dirty[static_cast<size_t>(g.q0)];
          dirty[static_cast<size_t>(g.q0)] = dirty[static_cast<size_t>(g.q1)];
          dirty[static_cast<size_t>(g.q1)] = d0;
        }
        out.gates.push_back(g);
        break;
      case Gate::Kind::Measure:
        flush(g.q0, true);
        out.gates.push_back(g);
        break;
    }
  }
  for (int q = 0; q < circuit.n_qubits; ++q) flush(q, false);
  return out;
}

std::vector<int> final_qubit_permutation(const Circuit& circuit) {
  std::vector<int> pos(static_cast<size_t>(circuit.n_qubits));
  for (int q = 0; q < circuit.n_qubits; ++q) pos[static_cast<size_t>(q)] = q;
  // pos[q]: current location of the mode that started on qubit q.  A merged
  // hop-fswap block transports its modes inside the two tagged Rzz gates, so
  // every completed pair of "hopswap" Rzz gates counts as one swap.
  std::map<std::pair<int, int>, int> half_blocks;
  for (const Gate& g : circuit.gates) {
    bool swap_now = false;
    if (g.kind == Gate::Kind::RelabelSwap) {
      swap_now = true;
    } else if (g.kind == Gate::Kind::Rzz && g.tag == "hopswap") {
      auto key = std::minmax(g.q0, g.q1);
      if (++half_blocks[{key.first, key.second}] == 2) {
        half_blocks[{key.first, key.second}] = 0;
        swap_now = true;
      }
    }
    if (!swap_now) continue;
    for (auto& p : pos) {
      if (p == g.q0) p = g.q1;
      else if (p == g.q1) p = g.q0;
    }
  }
  return pos;
}

std::string Circuit::to_json() const {
  nlohmann::json j;
  j["n_qubits"] = n_qubits;
  j["meta"] = {{"lx", meta.lx},       {"ly", meta.ly},   {"t", meta.t},
               {"u", meta.u},         {"steps", meta.steps},
               {"twirl_seed", meta.twirl_seed},
               {"n_up", meta.n_up},   {"n_dn", meta.n_dn}};
  nlohmann::json jgates = nlohmann::json::array();
  for (const Gate& g : gates) {
    nlohmann::json jg;
    switch (g.kind) {
      case Gate::Kind::U1q:
        jg["kind"] = "u1q";
        jg["qubits"] = {g.q0};
        jg["euler"] = {g.euler[0], g.euler[1], g.euler[2]};
        break;
      case Gate::Kind::Rzz:
        jg["kind"] = "rzz";
        jg["qubits"] = {g.q0, g.q1};
        jg["angle"] = g.angle;
        break;
      case Gate::Kind::RelabelSwap:
        jg["kind"] = "relabel_swap";
        jg["qubits"] = {g.q0, g.q1};
        break;
      case Gate::Kind::Measure:
        jg["kind"] = "measure";
        jg["qubits"] = {g.q0};
        break;
    }
    jg["tag"] = g.tag;
    jgates.push_back(jg);
  }
  j["gates"] = jgates;
  return j.dump();
}

Circuit Circuit::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Circuit c;
  c.n_qubits = j.at("n_qubits").get<int>();
  const auto& m = j.at("meta");
  c.meta.lx = m.at("lx").get<int>();
  c.meta.ly = m.at("ly").get<int>();
  c.meta.t = m.at("t").get<double>();
  c.meta.u = m.at("u").get<double>();
  c.meta.steps = m.at("steps").get<int>();
  c.meta.twirl_seed = m.at("twirl_seed").get<std::int64_t>();
  c.meta.n_up = m.at("n_up").get<int>();
  c.meta.n_dn = m.at("n_dn").get<int>();
  for (const auto& jg : j.at("gates")) {
    Gate g;
    std::string kind = jg.at("kind").get<std::string>();
    auto qubits = jg.at("qubits");
    g.q0 = qubits.at(0).get<int>();
    if (qubits.size() > 1) g.q1 = qubits.at(1).get<int>();
    if (kind == "u1q") {
      g.kind = Gate::Kind::U1q;
      g.euler = {jg.at("euler").at(0).get<double>(), jg.at("euler").at(1).get<double>(),
                 jg.at("euler").at(2).get<double>()};
    } else if (kind == "rzz") {
      g.kind = Gate::Kind::Rzz;
      g.angle = jg.at("angle").get<double>();
    } else if (kind == "relabel_swap") {
      g.kind = Gate::Kind::RelabelSwap;
    } else if (kind == "measure") {
      g.kind = Gate::Kind::Measure;
    } else {
      throw std::invalid_argument("unknown gate kind: " + kind);
    }
    g.tag = jg.value("tag", "");
    c.gates.push_back(g);
  }
  return c;
}

}  // namespace fhsim
