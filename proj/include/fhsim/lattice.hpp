#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fhsim {

/// Spin sector of a fermionic mode.
enum class Spin : int { Up = 0, Down = 1 };

/// One undirected nearest-neighbour bond of the torus. Multi-edges occur for
/// Lx = 2 or Ly = 2, where the direct and wrapped bond connect the same pair.
struct Bond {
  int a = 0;            // snake index of first site
  int b = 0;            // snake index of second site
  double phase = 0.0;   // phi in {0, pi}
  bool horizontal = false;
  bool wraps = false;   // crosses the periodic boundary
};

/// Doubly periodic Lx x Ly lattice with a {0, pi} bond-phase pattern.
///
/// Axis convention: Lx is the snake width (the short direction of the
/// experiment instance, Lx = 4, Ly = 7).  Sites carry their snake index:
/// row r runs left-to-right for even r and right-to-left for odd r.  Modes
/// are (site, spin) with the whole spin-down sector after spin-up.
class Lattice {
 public:
  Lattice(int lx, int ly, std::vector<Bond> bonds);

  int lx() const { return lx_; }
  int ly() const { return ly_; }
  int n_sites() const { return lx_ * ly_; }
  int n_modes() const { return 2 * lx_ * ly_; }

  /// Snake index of the site at column x, row y.
  int site_at(int x, int y) const;
  int site_x(int site) const { return coords_[static_cast<size_t>(site)].first; }
  int site_y(int site) const { return coords_[static_cast<size_t>(site)].second; }

  int jw_index(int site, Spin spin) const;
  int jw_index(int x, int y, Spin spin) const { return jw_index(site_at(x, y), spin); }
  /// Inverse of jw_index.
  std::pair<int, Spin> mode_site(int jw) const;

  const std::vector<Bond>& bonds() const { return bonds_; }

  /// Phase sum (mod 2 pi) around the plaquette whose lower-left corner is
  /// (x, y); corners are visited counter-clockwise.
  double plaquette_flux(int x, int y) const;

  /// Minimal-image |dx| + |dy| distance on the torus.
  int torus_manhattan(int site_i, int site_j) const;

  /// All monotone minimal-image paths from site_i to site_j, as site
  /// sequences including both endpoints.  When the wrap and no-wrap
  /// displacement tie in one direction, paths for both are included.
  std::vector<std::vector<int>> shortest_paths(int site_i, int site_j) const;

  /// Squared Euclidean minimal-image distance (integer, exact binning).
  int euclidean_sq(int site_i, int site_j) const;

  std::string to_json() const;
  static Lattice from_json(const std::string& text);

 private:
  int lx_;
  int ly_;
  std::vector<Bond> bonds_;
  std::vector<std::pair<int, int>> coords_;  // site -> (x, y)
  std::vector<std::vector<int>> site_grid_;  // [y][x] -> site
};

/// Builds the torus with a named flux preset: "zero" (all phases 0) or
/// "paper" (one ring of pi-flux plaquettes winding the short direction,
/// realised as phi = pi on the vertical bonds of odd columns in row 0).
/// Phases outside {0, pi} and dimensions < 2 are rejected.
Lattice build_lattice(int lx, int ly, const std::string& preset);

/// Builds the torus with explicit phases keyed by unordered site pair.
/// Unlisted bonds get phase 0.  Multi-edge pairs (Lx = 2 or Ly = 2) take the
/// listed phase on the direct bond and 0 on the wrapped one.
Lattice build_lattice(int lx, int ly,
                      const std::map<std::pair<int, int>, double>& phases);

}  // namespace fhsim
