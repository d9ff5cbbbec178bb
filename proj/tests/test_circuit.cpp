#include <doctest.h>

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "fhsim/circuit.hpp"
#include "fhsim/svsim.hpp"

using namespace fhsim;
using cplx = std::complex<double>;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Dense unitary of a small circuit, built column by column.
Eigen::MatrixXcd circuit_matrix(const Circuit& c) {
  std::int64_t dim = std::int64_t{1} << c.n_qubits;
  Eigen::MatrixXcd m(dim, dim);
  for (std::int64_t z = 0; z < dim; ++z) {
    sv::State e = sv::State::Zero(dim);
    e[z] = 1.0;
    m.col(z) = sv::run_circuit(c, e);
  }
  return m;
}

bool equal_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                       double tol = 1e-10) {
  cplx phase = 0.0;
  for (std::int64_t i = 0; i < a.rows() && std::abs(phase) < 1e-14; ++i)
    for (std::int64_t j = 0; j < a.cols(); ++j)
      if (std::abs(b(i, j)) > 1e-8) {
        phase = a(i, j) / b(i, j);
        break;
      }
  if (std::abs(std::abs(phase) - 1.0) > 1e-8) return false;
  return (a - phase * b).cwiseAbs().maxCoeff() < tol;
}

Eigen::Matrix4cd exact_hop(double t) {
  // e^{i (XX + YY) t / 2}: rotation in the |01>,|10> block
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
  m(1, 1) = m(2, 2) = std::cos(t);
  m(1, 2) = m(2, 1) = cplx(0, 1) * std::sin(t);
  return m;
}

Eigen::Matrix4cd exact_fswap() {
  Eigen::Matrix4cd f = Eigen::Matrix4cd::Zero();
  f(0, 0) = 1;
  f(1, 2) = 1;
  f(2, 1) = 1;
  f(3, 3) = -1;
  return f;
}

InitState init_2x2() {
  InitState st;
  st.holons = {0};
  st.doublons = {1};
  st.triplets = {{2, 3}};
  return st;
}

}  // namespace

TEST_CASE("hop gate block matches the exact bond evolution") {
  for (double t : {0.0, 0.3, -0.7, 1.9}) {
    Circuit c;
    c.n_qubits = 2;
    // reproduce the emitted block via trotter internals is awkward; build a
    // one-bond schedule through a 2x2 lattice instead is overkill here, so
    // check against the standalone emitters through a tiny wrapper circuit.
    c.gates.clear();
    // plain hop block (tagged "hop") on qubits 0,1
    {
      Circuit tmp;
      tmp.n_qubits = 2;
      // use the library path: a 2x2 lattice single forward hop is buried in
      // a full circuit, so emit via make_* helpers mirroring the decomposition
      auto h = [&](int q) {
        Eigen::Matrix2cd m;
        m << 1, 1, 1, -1;
        return make_u1q(q, m / std::sqrt(2.0), "hop");
      };
      auto s = [&](int q, bool dag) {
        Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
        m(1, 1) = dag ? cplx(0, -1) : cplx(0, 1);
        return make_u1q(q, m, "hop");
      };
      tmp.gates = {h(0), h(1), make_rzz(0, 1, -t, "hop"), h(0), h(1),
                   s(0, true), s(1, true), h(0), h(1), make_rzz(0, 1, -t, "hop"),
                   h(0), h(1), s(0, false), s(1, false)};
      CHECK(equal_up_to_phase(circuit_matrix(tmp), exact_hop(t)));
    }
  }
}

TEST_CASE("predicted cost reproduces its construction on the full grid") {
  for (int lx = 2; lx <= 5; ++lx) {
    for (int ly = 2; ly <= 7; ++ly) {
      Lattice lat = build_lattice(lx, ly, "zero");
      InitState init = default_init_state(lat);
      for (int steps : {1, 2, 3, 4}) {
        Circuit c = trotter_circuit(lat, init, 0.8, 4.0, steps);
        GateCounts gc = gate_counts(c);
        int prep = gc.by_tag.count("prep") ? gc.by_tag.at("prep") : 0;
        // count only Rzz prep gates
        int prep_rzz = 3 * static_cast<int>(init.triplets.size());
        (void)prep;
        INFO("lx=", lx, " ly=", ly, " steps=", steps);
        CHECK(gc.two_qubit - prep_rzz == predicted_two_qubit_cost(lx, ly, steps));
      }
    }
  }
}

TEST_CASE("paper gate-cost table rows") {
  CHECK(predicted_two_qubit_cost(4, 5, 1) == 428 + 16);
  CHECK(predicted_two_qubit_cost(4, 5, 4) == 428 * 4 + 16);
  CHECK(predicted_two_qubit_cost(4, 7, 4) == 588 * 4 + 24);
  CHECK(predicted_two_qubit_cost(4, 6, 4) == 486 * 4 + 24);
  CHECK(predicted_two_qubit_cost(5, 5, 4) == 674 * 4 + 16);
}

TEST_CASE("full experiment circuit has 2415 two-qubit gates") {
  Lattice lat = build_lattice(4, 7, "paper");
  Circuit c = trotter_circuit(lat, paper_init_state(), 2.0, 4.0, 4);
  GateCounts gc = gate_counts(c);
  CHECK(gc.two_qubit == 2415);
}

TEST_CASE("prep circuit costs three Rzz per triplet") {
  Lattice lat = build_lattice(4, 7, "paper");
  Circuit prep = triplet_prep_circuit(lat, paper_init_state());
  GateCounts gc = gate_counts(prep);
  CHECK(gc.two_qubit == 39);
}

TEST_CASE("prep circuit produces the dimer state") {
  Lattice lat = build_lattice(2, 2, "zero");
  InitState init = init_2x2();
  Circuit prep = triplet_prep_circuit(lat, init);
  sv::State psi = sv::run_circuit(prep, sv::zero_state(4 * 2));
  // exactly the two Fock patterns of the triplet appear, signs -1 relative
  InitState st = init;
  auto [lo_a, hi_a] = st.fock_mask(lat, 0);
  auto [lo_b, hi_b] = st.fock_mask(lat, 1);
  (void)hi_a;
  (void)hi_b;
  cplx amp_a = psi[static_cast<std::int64_t>(lo_a)];
  cplx amp_b = psi[static_cast<std::int64_t>(lo_b)];
  CHECK(std::abs(std::abs(amp_a) - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(amp_b / amp_a + 1.0) < 1e-12);  // relative sign -1
  double rest = 1.0 - std::norm(amp_a) - std::norm(amp_b);
  CHECK(std::abs(rest) < 1e-12);
  // <Z> = 0 on all four triplet qubits
  for (int q : {2, 3, 6, 7}) {
    CHECK(std::abs(sv::z_string_expectation(psi, std::uint64_t{1} << q)) < 1e-12);
  }
  // doublon site occupied in both spins, holon empty
  CHECK(sv::z_string_expectation(psi, std::uint64_t{1} << 1) == doctest::Approx(-1.0));
  CHECK(sv::z_string_expectation(psi, std::uint64_t{1} << 5) == doctest::Approx(-1.0));
  CHECK(sv::z_string_expectation(psi, std::uint64_t{1} << 0) == doctest::Approx(1.0));
}

TEST_CASE("prep rejects bad pairings") {
  Lattice lat = build_lattice(2, 2, "zero");
  InitState bad;
  bad.holons = {0};
  bad.doublons = {2};
  bad.triplets = {{1, 3}};  // not JW-adjacent
  CHECK_THROWS_AS(triplet_prep_circuit(lat, bad), std::invalid_argument);
  InitState incomplete;
  incomplete.holons = {0};
  incomplete.doublons = {1};
  CHECK_THROWS_AS(triplet_prep_circuit(lat, incomplete), std::invalid_argument);
}

TEST_CASE("trotter circuit at t = 0 is the identity up to phase") {
  Lattice lat = build_lattice(2, 2, "zero");
  Circuit c = trotter_circuit(lat, init_2x2(), 0.0, 4.0, 1, /*include_prep=*/false);
  Eigen::MatrixXcd m = circuit_matrix(c);
  CHECK(equal_up_to_phase(m, Eigen::MatrixXcd::Identity(m.rows(), m.cols())));
}

TEST_CASE("trotter circuit rejects odd sector parity and bad steps") {
  Lattice lat = build_lattice(2, 3, "zero");
  InitState odd;  // 2 triplets + holon + doublon: 3 per sector
  odd.holons = {0};
  odd.doublons = {3};
  odd.triplets = {{1, 2}, {4, 5}};
  CHECK_THROWS_AS(trotter_circuit(lat, odd, 1.0, 0.0, 1), std::invalid_argument);
  Lattice l2 = build_lattice(2, 2, "zero");
  CHECK_THROWS_AS(trotter_circuit(l2, init_2x2(), 1.0, 0.0, 0), std::invalid_argument);
}

TEST_CASE("occupation is conserved per sector through the circuit") {
  Lattice lat = build_lattice(2, 2, "zero");
  Circuit c = trotter_circuit(lat, init_2x2(), 0.9, 4.0, 2);
  sv::State psi = sv::run_circuit(c, sv::zero_state(8));
  // support only on states with per-sector weight 2
  for (std::int64_t z = 0; z < psi.size(); ++z) {
    if (std::norm(psi[z]) < 1e-20) continue;
    int up = __builtin_popcountll(static_cast<std::uint64_t>(z) & 0xFull);
    int dn = __builtin_popcountll(static_cast<std::uint64_t>(z) & 0xF0ull);
    CHECK(up == 2);
    CHECK(dn == 2);
  }
}

TEST_CASE("final qubit permutation is the identity for full circuits") {
  for (auto [lx, ly] : {std::pair{2, 2}, std::pair{3, 3}, std::pair{4, 5}}) {
    Lattice lat = build_lattice(lx, ly, "zero");
    InitState init = default_init_state(lat);
    Circuit c = trotter_circuit(lat, init, 1.0, 4.0, 2);
    auto perm = final_qubit_permutation(c);
    for (int q = 0; q < c.n_qubits; ++q) CHECK(perm[static_cast<size_t>(q)] == q);
  }
}

TEST_CASE("pseudo twirl preserves the unitary and is seed deterministic") {
  Lattice lat = build_lattice(2, 2, "zero");
  Circuit c = trotter_circuit(lat, init_2x2(), 0.7, 4.0, 1);
  sv::State ref = sv::run_circuit(c, sv::zero_state(8));
  int distinct = 0;
  std::vector<size_t> sizes;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Circuit tw = pseudo_twirl(c, seed);
    Circuit again = pseudo_twirl(c, seed);
    CHECK(tw.gates.size() == again.gates.size());
    sv::State out = sv::run_circuit(tw, sv::zero_state(8));
    CHECK(std::abs(std::abs(ref.dot(out)) - 1.0) < 1e-10);
    if (tw.gates.size() != c.gates.size()) ++distinct;
    sizes.push_back(tw.gates.size());
  }
  CHECK(distinct > 10);  // twirl draws actually insert Paulis
}

TEST_CASE("compile_1q preserves the unitary and reduces gate count") {
  Lattice lat = build_lattice(2, 2, "zero");
  Circuit c = pseudo_twirl(trotter_circuit(lat, init_2x2(), 0.7, 4.0, 1), 5);
  Circuit opt = compile_1q(c);
  GateCounts before = gate_counts(c), after = gate_counts(opt);
  CHECK(after.two_qubit == before.two_qubit);
  CHECK(after.one_qubit < before.one_qubit);
  sv::State a = sv::run_circuit(c, sv::zero_state(8));
  sv::State b = sv::run_circuit(opt, sv::zero_state(8));
  CHECK(std::abs(std::abs(a.dot(b)) - 1.0) < 1e-10);
}

TEST_CASE("compile_1q removes adjacent inverse pairs") {
  Circuit c;
  c.n_qubits = 1;
  Eigen::Matrix2cd h;
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  c.gates = {make_u1q(0, h, ""), make_u1q(0, h, "")};
  CHECK(compile_1q(c).gates.empty());
  Eigen::Matrix2cd s = Eigen::Matrix2cd::Identity();
  s(1, 1) = cplx(0, 1);
  Eigen::Matrix2cd sdg = s.adjoint();
  c.gates = {make_u1q(0, s, ""), make_u1q(0, sdg, "")};
  CHECK(compile_1q(c).gates.empty());
}

TEST_CASE("paper circuit compiles to at most 4700 one-qubit gates") {
  Lattice lat = build_lattice(4, 7, "paper");
  Circuit c = trotter_circuit(lat, paper_init_state(), 2.0, 4.0, 4);
  Circuit tw = pseudo_twirl(c, 12345);
  Circuit opt = compile_1q(tw);
  GateCounts gc = gate_counts(opt);
  CHECK(gc.two_qubit == 2415);
  CHECK(gc.one_qubit <= 4700);
  CHECK(gc.one_qubit > 0);
}

TEST_CASE("circuit json round trip") {
  Lattice lat = build_lattice(2, 2, "zero");
  Circuit c = trotter_circuit(lat, init_2x2(), 0.4, 4.0, 1);
  Circuit back = Circuit::from_json(c.to_json());
  REQUIRE(back.gates.size() == c.gates.size());
  CHECK(back.meta.t == c.meta.t);
  for (size_t k = 0; k < c.gates.size(); ++k) {
    CHECK(back.gates[k].kind == c.gates[k].kind);
    CHECK(back.gates[k].q0 == c.gates[k].q0);
    CHECK(back.gates[k].angle == c.gates[k].angle);
  }
}

TEST_CASE("merged hop-fswap block equals FSWAP times HOP") {
  // library-internal decomposition check via a 2x2 lattice circuit is
  // indirect; verify the algebra the emitter relies on instead
  double t = 0.37;
  Eigen::Matrix4cd hop = exact_hop(t);
  Eigen::Matrix4cd target = exact_fswap() * hop;
  // build merged block + swap from the library by extracting it out of a
  // real circuit is messy; emit the same gates directly
  Circuit c;
  c.n_qubits = 2;
  auto h = [&](int q) {
    Eigen::Matrix2cd m;
    m << 1, 1, 1, -1;
    return make_u1q(q, m / std::sqrt(2.0), "");
  };
  auto sdg = [&](int q) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    m(1, 1) = cplx(0, -1);
    return make_u1q(q, m, "");
  };
  Gate swap;
  swap.kind = Gate::Kind::RelabelSwap;
  swap.q0 = 0;
  swap.q1 = 1;
  c.gates = {h(0), h(1), make_rzz(0, 1, -t - kPi / 2, ""), h(0), h(1),
             sdg(0), sdg(1), h(0), h(1), make_rzz(0, 1, -t - kPi / 2, ""),
             h(0), h(1), swap};
  CHECK(equal_up_to_phase(circuit_matrix(c), target));
}
