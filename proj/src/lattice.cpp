#include "fhsim/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include <json.hpp>

namespace fhsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_binary_phase(double phi) {
  return std::abs(phi) < 1e-12 || std::abs(phi - kPi) < 1e-12;
}

}  // namespace

Lattice::Lattice(int lx, int ly, std::vector<Bond> bonds)
    : lx_(lx), ly_(ly), bonds_(std::move(bonds)) {
  if (lx < 2 || ly < 2) throw std::invalid_argument("lattice dimensions must be >= 2");
  coords_.resize(static_cast<size_t>(lx * ly));
  site_grid_.assign(static_cast<size_t>(ly), std::vector<int>(static_cast<size_t>(lx), 0));
  for (int y = 0; y < ly; ++y) {
    for (int x = 0; x < lx; ++x) {
      int s = y * lx + ((y % 2 == 0) ? x : lx - 1 - x);
      coords_[static_cast<size_t>(s)] = {x, y};
      site_grid_[static_cast<size_t>(y)][static_cast<size_t>(x)] = s;
    }
  }
  for (const Bond& b : bonds_) {
    if (b.a < 0 || b.a >= n_sites() || b.b < 0 || b.b >= n_sites())
      throw std::invalid_argument("bond endpoint out of range");
    if (!is_binary_phase(b.phase))
      throw std::invalid_argument("bond phase must be 0 or pi");
  }
}

int Lattice::site_at(int x, int y) const {
  if (x < 0 || x >= lx_ || y < 0 || y >= ly_)
    throw std::out_of_range("site coordinates out of range");
  return site_grid_[static_cast<size_t>(y)][static_cast<size_t>(x)];
}

int Lattice::jw_index(int site, Spin spin) const {
  if (site < 0 || site >= n_sites()) throw std::out_of_range("site out of range");
  return site + (spin == Spin::Down ? n_sites() : 0);
}

std::pair<int, Spin> Lattice::mode_site(int jw) const {
  if (jw < 0 || jw >= n_modes()) throw std::out_of_range("mode out of range");
  int l = n_sites();
  return {jw % l, jw < l ? Spin::Up : Spin::Down};
}

double Lattice::plaquette_flux(int x, int y) const {
  // Corners counter-clockwise: (x,y) -> (x+1,y) -> (x+1,y+1) -> (x,y+1).
  int x1 = (x + 1) % lx_;
  int y1 = (y + 1) % ly_;
  int s00 = site_at(x, y), s10 = site_at(x1, y), s11 = site_at(x1, y1), s01 = site_at(x, y1);
  auto edge_phase = [&](int a, int b, bool horizontal, bool wraps) {
    for (const Bond& bd : bonds_) {
      if (bd.horizontal != horizontal || bd.wraps != wraps) continue;
      if ((bd.a == a && bd.b == b) || (bd.a == b && bd.b == a)) return bd.phase;
    }
    throw std::logic_error("missing plaquette edge");
  };
  double sum = edge_phase(s00, s10, true, x + 1 == lx_) +
               edge_phase(s10, s11, false, y + 1 == ly_) +
               edge_phase(s11, s01, true, x + 1 == lx_) +
               edge_phase(s01, s00, false, y + 1 == ly_);
  // Phases are 0/pi, hence self-inverse under bond reversal mod 2 pi.
  double flux = std::fmod(sum, 2.0 * kPi);
  if (flux > kPi + 1e-9) flux -= 2.0 * kPi;
  if (flux < -1e-9) flux += 2.0 * kPi;
  return std::abs(flux) < 1e-9 ? 0.0 : kPi;
}

int Lattice::torus_manhattan(int site_i, int site_j) const {
  int dx = std::abs(site_x(site_i) - site_x(site_j));
  int dy = std::abs(site_y(site_i) - site_y(site_j));
  return std::min(dx, lx_ - dx) + std::min(dy, ly_ - dy);
}

int Lattice::euclidean_sq(int site_i, int site_j) const {
  int dx = std::abs(site_x(site_i) - site_x(site_j));
  int dy = std::abs(site_y(site_i) - site_y(site_j));
  dx = std::min(dx, lx_ - dx);
  dy = std::min(dy, ly_ - dy);
  return dx * dx + dy * dy;
}

std::vector<std::vector<int>> Lattice::shortest_paths(int site_i, int site_j) const {
  if (site_i == site_j) throw std::invalid_argument("shortest_paths requires distinct sites");
  // Minimal-image displacement candidates per axis; ties keep both windings.
  auto axis_options = [](int from, int to, int extent) {
    std::vector<int> out;
    int fwd = ((to - from) % extent + extent) % extent;  // steps in +direction
    int bwd = extent - fwd;                              // steps in -direction
    if (fwd == 0) return out = {0};
    if (fwd < bwd) out.push_back(fwd);
    else if (bwd < fwd) out.push_back(-bwd);
    else { out.push_back(fwd); out.push_back(-bwd); }
    return out;
  };
  std::vector<std::vector<int>> paths;
  for (int dx : axis_options(site_x(site_i), site_x(site_j), lx_)) {
    for (int dy : axis_options(site_y(site_i), site_y(site_j), ly_)) {
      int nx = std::abs(dx), ny = std::abs(dy);
      int sx = dx >= 0 ? 1 : -1, sy = dy >= 0 ? 1 : -1;
      std::vector<int> current{site_i};
      // Enumerate all interleavings of nx x-steps and ny y-steps.
      auto recurse = [&](auto&& self, int cx, int cy, int rx, int ry) -> void {
        if (rx == 0 && ry == 0) { paths.push_back(current); return; }
        if (rx > 0) {
          int nxp = ((cx + sx) % lx_ + lx_) % lx_;
          current.push_back(site_at(nxp, cy));
          self(self, nxp, cy, rx - 1, ry);
          current.pop_back();
        }
        if (ry > 0) {
          int nyp = ((cy + sy) % ly_ + ly_) % ly_;
          current.push_back(site_at(cx, nyp));
          self(self, cx, nyp, rx, ry - 1);
          current.pop_back();
        }
      };
      recurse(recurse, site_x(site_i), site_y(site_i), nx, ny);
    }
  }
  return paths;
}

std::string Lattice::to_json() const {
  nlohmann::json j;
  j["lx"] = lx_;
  j["ly"] = ly_;
  nlohmann::json jb = nlohmann::json::array();
  for (const Bond& b : bonds_) {
    jb.push_back({{"a", b.a}, {"b", b.b}, {"phase", b.phase},
                  {"horizontal", b.horizontal}, {"wraps", b.wraps}});
  }
  j["bonds"] = jb;
  return j.dump(2);
}

Lattice Lattice::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::vector<Bond> bonds;
  for (const auto& jb : j.at("bonds")) {
    Bond b;
    b.a = jb.at("a").get<int>();
    b.b = jb.at("b").get<int>();
    b.phase = jb.at("phase").get<double>();
    b.horizontal = jb.at("horizontal").get<bool>();
    b.wraps = jb.at("wraps").get<bool>();
    bonds.push_back(b);
  }
  return Lattice(j.at("lx").get<int>(), j.at("ly").get<int>(), std::move(bonds));
}

namespace {

std::vector<Bond> torus_bonds(int lx, int ly) {
  std::vector<Bond> bonds;
  auto site = [&](int x, int y) {
    return y * lx + ((y % 2 == 0) ? x : lx - 1 - x);
  };
  for (int y = 0; y < ly; ++y) {
    for (int x = 0; x < lx; ++x) {
      Bond h;
      h.a = site(x, y);
      h.b = site((x + 1) % lx, y);
      h.horizontal = true;
      h.wraps = (x + 1 == lx);
      bonds.push_back(h);
      Bond v;
      v.a = site(x, y);
      v.b = site(x, (y + 1) % ly);
      v.horizontal = false;
      v.wraps = (y + 1 == ly);
      bonds.push_back(v);
    }
  }
  return bonds;
}

}  // namespace

Lattice build_lattice(int lx, int ly, const std::string& preset) {
  if (lx < 2 || ly < 2) throw std::invalid_argument("lattice dimensions must be >= 2");
  std::vector<Bond> bonds = torus_bonds(lx, ly);
  if (preset == "zero" || preset == "zero-flux" || preset == "none") {
    // nothing to do
  } else if (preset == "paper" || preset == "paper-style" ||
             preset == "paper-style pi column") {
    // pi on the vertical bonds leaving row 0 at odd columns: every plaquette
    // between rows 0 and 1 picks up exactly one pi edge, giving a ring of
    // flux-pi plaquettes around the short direction (all Lx of them when Lx
    // is even; Lx - 1 when odd, where a closed ring is impossible since the
    // number of pi-flux plaquettes on a torus is always even).
    for (Bond& b : bonds) {
      if (b.horizontal || b.wraps) continue;
      int x = 0, y0 = 0;
      // recover coordinates of endpoint a
      y0 = b.a / lx;
      x = (y0 % 2 == 0) ? b.a - y0 * lx : lx - 1 - (b.a - y0 * lx);
      if (y0 == 0 && x % 2 == 1) b.phase = kPi;
    }
  } else {
    throw std::invalid_argument("unknown flux preset: " + preset);
  }
  return Lattice(lx, ly, std::move(bonds));
}

Lattice build_lattice(int lx, int ly,
                      const std::map<std::pair<int, int>, double>& phases) {
  std::vector<Bond> bonds = torus_bonds(lx, ly);
  std::vector<bool> used(bonds.size(), false);
  for (const auto& [pair, phi] : phases) {
    if (!is_binary_phase(phi)) throw std::invalid_argument("bond phase must be 0 or pi");
    bool found = false;
    for (size_t k = 0; k < bonds.size(); ++k) {
      Bond& b = bonds[k];
      if (used[k]) continue;
      if ((b.a == pair.first && b.b == pair.second) ||
          (b.a == pair.second && b.b == pair.first)) {
        b.phase = phi;
        used[k] = true;
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("phase given for a non-bond site pair");
  }
  return Lattice(lx, ly, std::move(bonds));
}

}  // namespace fhsim
