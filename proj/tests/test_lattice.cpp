#include <doctest.h>

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "fhsim/lattice.hpp"

using namespace fhsim;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Brute-force enumeration of all shortest paths by BFS at fixed length over
// the torus graph (each neighbour step allowed, path length = manhattan).
std::set<std::vector<int>> bfs_paths(const Lattice& lat, int a, int b) {
  int target_len = lat.torus_manhattan(a, b);
  std::set<std::vector<int>> result;
  std::queue<std::vector<int>> frontier;
  frontier.push({a});
  while (!frontier.empty()) {
    auto path = frontier.front();
    frontier.pop();
    int last = path.back();
    if (static_cast<int>(path.size()) - 1 == target_len) {
      if (last == b) result.insert(path);
      continue;
    }
    int x = lat.site_x(last), y = lat.site_y(last);
    int lx = lat.lx(), ly = lat.ly();
    for (auto [nx, ny] : {std::pair{(x + 1) % lx, y},
                          std::pair{(x + lx - 1) % lx, y},
                          std::pair{x, (y + 1) % ly},
                          std::pair{x, (y + ly - 1) % ly}}) {
      int nxt = lat.site_at(nx, ny);
      // only extend if it can still reach b in the remaining budget
      int remaining = target_len - static_cast<int>(path.size());
      if (lat.torus_manhattan(nxt, b) <= remaining) {
        auto ext = path;
        ext.push_back(nxt);
        frontier.push(ext);
      }
    }
  }
  return result;
}

}  // namespace

TEST_CASE("paper lattice dimensions and bond count") {
  Lattice lat = build_lattice(4, 7, "paper");
  CHECK(lat.n_sites() == 28);
  CHECK(lat.n_modes() == 56);
  CHECK(lat.bonds().size() == 56);
  // every site has exactly 4 bond endpoints
  std::vector<int> deg(28, 0);
  for (const Bond& b : lat.bonds()) {
    ++deg[b.a];
    ++deg[b.b];
  }
  for (int d : deg) CHECK(d == 4);
}

TEST_CASE("2x2 lattice has doubled edges and zero flux preset") {
  Lattice lat = build_lattice(2, 2, "zero");
  CHECK(lat.bonds().size() == 8);
  std::map<std::pair<int, int>, int> multiplicity;
  for (const Bond& b : lat.bonds()) ++multiplicity[std::minmax(b.a, b.b)];
  for (const auto& [k, m] : multiplicity) CHECK(m == 2);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) CHECK(lat.plaquette_flux(x, y) == 0.0);
}

TEST_CASE("snake ordering and jw indices") {
  Lattice lat = build_lattice(4, 7, "paper");
  CHECK(lat.jw_index(lat.site_at(0, 0), Spin::Up) == 0);
  CHECK(lat.jw_index(lat.site_at(3, 1), Spin::Up) == 4);
  CHECK(lat.jw_index(lat.site_at(0, 0), Spin::Down) == 28);
  // bijection round-trip
  for (int jw = 0; jw < lat.n_modes(); ++jw) {
    auto [site, spin] = lat.mode_site(jw);
    CHECK(lat.jw_index(site, spin) == jw);
  }
}

TEST_CASE("paper flux pattern: one ring of pi plaquettes") {
  Lattice lat = build_lattice(4, 7, "paper");
  int n_pi = 0;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 7; ++y)
      if (lat.plaquette_flux(x, y) == kPi) ++n_pi;
  CHECK(n_pi == 4);
  for (int x = 0; x < 4; ++x) CHECK(lat.plaquette_flux(x, 0) == kPi);
  // each flux plaquette carries exactly one pi bond
  int n_pi_bonds = 0;
  for (const Bond& b : lat.bonds())
    if (b.phase != 0.0) ++n_pi_bonds;
  CHECK(n_pi_bonds == 2);
}

TEST_CASE("pi-flux plaquette count is even on any torus") {
  // A single column of 3 flux plaquettes on 3x3 is impossible: each bond
  // borders two plaquettes, so the number of pi plaquettes is always even.
  Lattice lat = build_lattice(3, 3, "paper");
  int n_pi = 0;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      if (lat.plaquette_flux(x, y) == kPi) ++n_pi;
  CHECK(n_pi % 2 == 0);
  CHECK(n_pi == 2);  // lx - 1 for odd lx
}

TEST_CASE("build_lattice input validation") {
  CHECK_THROWS_AS(build_lattice(1, 4, "zero"), std::invalid_argument);
  CHECK_THROWS_AS(build_lattice(4, 1, "zero"), std::invalid_argument);
  CHECK_THROWS_AS(build_lattice(4, 4, "bogus"), std::invalid_argument);
  std::map<std::pair<int, int>, double> phases{{{0, 1}, 0.5}};
  CHECK_THROWS_AS(build_lattice(4, 4, phases), std::invalid_argument);
}

TEST_CASE("torus manhattan distance") {
  Lattice lat = build_lattice(4, 7, "zero");
  int s00 = lat.site_at(0, 0);
  CHECK(lat.torus_manhattan(s00, s00) == 0);
  CHECK(lat.torus_manhattan(s00, lat.site_at(3, 0)) == 1);
  CHECK(lat.torus_manhattan(s00, lat.site_at(2, 3)) == 5);
  for (int i = 0; i < lat.n_sites(); ++i)
    for (int j = 0; j < lat.n_sites(); ++j) {
      CHECK(lat.torus_manhattan(i, j) == lat.torus_manhattan(j, i));
      int flat = std::abs(lat.site_x(i) - lat.site_x(j)) +
                 std::abs(lat.site_y(i) - lat.site_y(j));
      CHECK(lat.torus_manhattan(i, j) <= flat);
    }
}

TEST_CASE("shortest paths: counts and brute-force equivalence") {
  Lattice lat = build_lattice(4, 7, "zero");
  int s00 = lat.site_at(0, 0);
  // adjacent sites: one path of two sites
  auto adj = lat.shortest_paths(s00, lat.site_at(1, 0));
  CHECK(adj.size() == 1);
  CHECK(adj[0].size() == 2);
  // displacement (2,1) off-boundary: binomial(3,1) = 3 paths
  CHECK(lat.shortest_paths(s00, lat.site_at(2, 1)).size() == 3);
  // displacement 2 in x on width 4: both windings tie
  auto both = lat.shortest_paths(s00, lat.site_at(2, 0));
  CHECK(both.size() == 2);
  CHECK_THROWS_AS(lat.shortest_paths(s00, s00), std::invalid_argument);
}

TEST_CASE("shortest paths match BFS enumeration on small tori") {
  for (auto [lx, ly] : {std::pair{3, 3}, std::pair{4, 4}, std::pair{4, 3}}) {
    Lattice lat = build_lattice(lx, ly, "zero");
    for (int i = 0; i < lat.n_sites(); ++i)
      for (int j = 0; j < lat.n_sites(); ++j) {
        if (i == j) continue;
        auto got = lat.shortest_paths(i, j);
        std::set<std::vector<int>> got_set(got.begin(), got.end());
        CHECK(got_set.size() == got.size());
        CHECK(got_set == bfs_paths(lat, i, j));
      }
  }
}

TEST_CASE("lattice json round trip") {
  Lattice lat = build_lattice(4, 7, "paper");
  Lattice back = Lattice::from_json(lat.to_json());
  CHECK(back.lx() == 4);
  CHECK(back.ly() == 7);
  CHECK(back.bonds().size() == lat.bonds().size());
  for (size_t k = 0; k < lat.bonds().size(); ++k) {
    CHECK(back.bonds()[k].a == lat.bonds()[k].a);
    CHECK(back.bonds()[k].phase == lat.bonds()[k].phase);
  }
}
