#include "fhsim/schedule.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace fhsim {

namespace {

// Forward-pass layer for one spin sector, positions within [0, L).
struct ProtoHop {
  int qa, qb;
  int site_a, site_b;
  double flux_sign;
  bool parity_flip;
  bool merged;
};
struct ProtoFswap {
  int qa, qb;
};
struct ProtoLayer {
  std::vector<ProtoHop> hops;
  std::vector<ProtoFswap> swaps;
  bool initial_vhops = false;  // part of the step's opening vertical block
};

class PassBuilder {
 public:
  explicit PassBuilder(const Lattice& lat) : lat_(lat), lx_(lat.lx()), ly_(lat.ly()) {
    cols_.resize(static_cast<size_t>(lx_));
    for (int x = 0; x < lx_; ++x) cols_[static_cast<size_t>(x)] = x;
    const auto& bonds = lat.bonds();
    for (size_t k = 0; k < bonds.size(); ++k) {
      const Bond& b = bonds[k];
      auto key = std::minmax(b.a, b.b);
      pair_bonds_[{key.first, key.second}].push_back(static_cast<int>(k));
      done_.push_back(b.wraps && !b.horizontal && ly_ % 2 == 1);
      // odd-Ly vertical wrap bonds are handled by the boundary block
    }
  }

  // Runs the even/odd-Lx schedule to completion and returns the layers.
  std::vector<ProtoLayer> build() {
    std::vector<ProtoLayer> layers;
    if (lx_ % 2 == 0) {
      layers.push_back(vertical_layer());
      layers.back().initial_vhops = true;
      int guard = 0;
      while (!all_done()) {
        layers.push_back(swap_layer(/*even_cols=*/true));
        if (all_done()) break;
        layers.push_back(vertical_layer());
        if (all_done()) break;
        layers.push_back(swap_layer(/*even_cols=*/false));
        if (++guard > 4 * lx_ + 8) throw std::logic_error("swap network failed to terminate");
      }
    } else {
      layers.push_back(column_layer(/*left=*/true));
      layers.back().initial_vhops = true;
      layers.push_back(column_layer(/*left=*/false));
      layers.back().initial_vhops = true;
      int guard = 0;
      while (!all_done()) {
        layers.push_back(swap_layer(/*even_cols=*/true));
        if (all_done()) break;
        layers.push_back(column_layer(/*left=*/true));
        if (all_done()) break;
        layers.push_back(swap_layer(/*even_cols=*/false));
        if (all_done()) break;
        layers.push_back(column_layer(/*left=*/false));
        if (++guard > 4 * lx_ + 8) throw std::logic_error("swap network failed to terminate");
      }
    }
    return layers;
  }

  const std::vector<int>& final_cols() const { return cols_; }

 private:
  int jw_pos(int px, int y) const {
    return y * lx_ + ((y % 2 == 0) ? px : lx_ - 1 - px);
  }

  bool all_done() const {
    for (bool d : done_)
      if (!d) return false;
    return true;
  }

  // Consumes the first pending bond between two sites, if any.
  int take_bond(int sa, int sb) {
    auto key = std::minmax(sa, sb);
    auto it = pair_bonds_.find({key.first, key.second});
    if (it == pair_bonds_.end()) return -1;
    for (int k : it->second) {
      if (!done_[static_cast<size_t>(k)]) {
        done_[static_cast<size_t>(k)] = true;
        return k;
      }
    }
    return -1;
  }

  void try_vertical(ProtoLayer& layer, int px, int y_lo, int y_hi, bool loop_pair) {
    int col = cols_[static_cast<size_t>(px)];
    int sa = lat_.site_at(col, y_lo);
    int sb = lat_.site_at(col, y_hi);
    int k = take_bond(sa, sb);
    if (k < 0) return;
    const Bond& b = lat_.bonds()[static_cast<size_t>(k)];
    layer.hops.push_back({jw_pos(px, y_lo), jw_pos(px, y_hi), sa, sb,
                          b.phase > 1.0 ? -1.0 : 1.0, loop_pair, false});
  }

  // All vertical hops available at snake turns (and the JW-loop junction
  // when the top and bottom rows line up, i.e. even Ly).
  ProtoLayer vertical_layer() {
    ProtoLayer layer;
    for (int y = 0; y + 1 < ly_; ++y) try_vertical(layer, y % 2 == 0 ? lx_ - 1 : 0, y, y + 1, false);
    if (ly_ % 2 == 0) try_vertical(layer, 0, ly_ - 1, 0, true);
    return layer;
  }

  // Odd-Lx variant: turns on the leftmost or rightmost column only.
  ProtoLayer column_layer(bool left) {
    ProtoLayer layer;
    for (int y = 0; y + 1 < ly_; ++y) {
      bool at_left = y % 2 == 1;
      if (at_left == left) try_vertical(layer, left ? 0 : lx_ - 1, y, y + 1, false);
    }
    if (left && ly_ % 2 == 0) try_vertical(layer, 0, ly_ - 1, 0, true);
    return layer;
  }

  ProtoLayer swap_layer(bool even_cols) {
    ProtoLayer layer;
    int first = even_cols ? 0 : 1;
    for (int y = 0; y < ly_; ++y) {
      for (int px = first; px + 1 < lx_; px += 2) {
        int qa = jw_pos(px, y), qb = jw_pos(px + 1, y);
        if (qa > qb) std::swap(qa, qb);
        int sa = lat_.site_at(cols_[static_cast<size_t>(px)], y);
        int sb = lat_.site_at(cols_[static_cast<size_t>(px + 1)], y);
        int k = take_bond(sa, sb);
        if (k >= 0) {
          const Bond& b = lat_.bonds()[static_cast<size_t>(k)];
          layer.hops.push_back({qa, qb, sa, sb, b.phase > 1.0 ? -1.0 : 1.0, false, true});
        } else {
          layer.swaps.push_back({qa, qb});
        }
      }
    }
    for (int px = first; px + 1 < lx_; px += 2)
      std::swap(cols_[static_cast<size_t>(px)], cols_[static_cast<size_t>(px + 1)]);
    return layer;
  }

  const Lattice& lat_;
  int lx_, ly_;
  std::vector<int> cols_;
  std::map<std::pair<int, int>, std::vector<int>> pair_bonds_;
  std::vector<bool> done_;
};

}  // namespace

std::vector<ScheduleEvent> trotter_schedule(const Lattice& lat, int steps) {
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  const int l = lat.n_sites();
  PassBuilder builder(lat);
  std::vector<ProtoLayer> pass = builder.build();
  const std::vector<int> mid_cols = builder.final_cols();

  std::vector<ScheduleEvent> events;
  int layer_id = 0;

  auto emit_layer = [&](const ProtoLayer& proto, bool reversed, double dt_hop, bool skip) {
    if (skip) return;
    for (Spin sector : {Spin::Up, Spin::Down}) {
      int off = sector == Spin::Down ? l : 0;
      for (const ProtoHop& h : proto.hops) {
        ScheduleEvent e;
        e.kind = ScheduleEvent::Kind::Hop;
        e.q0 = h.qa + off;
        e.q1 = h.qb + off;
        e.site_a = h.site_a;
        e.site_b = h.site_b;
        e.sector = sector;
        e.flux_sign = h.flux_sign;
        e.parity_flip = h.parity_flip;
        e.merged_fswap = h.merged;
        e.dt_factor = dt_hop;
        e.layer = layer_id;
        events.push_back(e);
      }
      for (const ProtoFswap& s : proto.swaps) {
        ScheduleEvent e;
        e.kind = ScheduleEvent::Kind::Fswap;
        e.q0 = s.qa + off;
        e.q1 = s.qb + off;
        e.sector = sector;
        e.layer = layer_id;
        events.push_back(e);
      }
    }
    (void)reversed;
    ++layer_id;
  };

  // Boundary block for odd Ly: hops between row 0 and the top row, written
  // on the complementary Z string; only the outer CZ layers survive since
  // the inner ones commute through the onsite layer and cancel.
  auto emit_boundary_cz = [&]() {
    if (lat.ly() % 2 == 0) return;
    for (Spin sector : {Spin::Up, Spin::Down}) {
      int off = sector == Spin::Down ? l : 0;
      for (int i = 0; i + 1 < lat.lx(); ++i) {
        for (int j = 1; j <= lat.lx() - 1 - i; ++j) {
          ScheduleEvent e;
          e.kind = ScheduleEvent::Kind::BoundaryCz;
          e.q0 = i + off;
          e.q1 = l - j + off;
          e.sector = sector;
          e.boundary = true;
          e.layer = layer_id;
          events.push_back(e);
        }
      }
    }
    ++layer_id;
  };

  auto emit_boundary_hops = [&]() {
    if (lat.ly() % 2 == 0) return;
    for (Spin sector : {Spin::Up, Spin::Down}) {
      int off = sector == Spin::Down ? l : 0;
      for (int i = 0; i < lat.lx(); ++i) {
        int col = mid_cols[static_cast<size_t>(i)];
        int sa = lat.site_at(col, 0);
        int sb = lat.site_at(col, lat.ly() - 1);
        double sign = 1.0;
        for (const Bond& b : lat.bonds()) {
          if (b.horizontal || !b.wraps) continue;
          if ((b.a == sa && b.b == sb) || (b.a == sb && b.b == sa)) {
            sign = b.phase > 1.0 ? -1.0 : 1.0;
            break;
          }
        }
        ScheduleEvent e;
        e.kind = ScheduleEvent::Kind::Hop;
        e.q0 = i + off;
        e.q1 = l - lat.lx() + i + off;
        e.site_a = sa;
        e.site_b = sb;
        e.sector = sector;
        e.flux_sign = sign;
        e.parity_flip = true;
        e.boundary = true;
        e.dt_factor = 0.5;
        e.layer = layer_id;
        events.push_back(e);
      }
    }
    ++layer_id;
  };

  auto emit_onsite = [&]() {
    for (int px = 0; px < lat.lx(); ++px) {
      int col = mid_cols[static_cast<size_t>(px)];
      for (int y = 0; y < lat.ly(); ++y) {
        int q = y * lat.lx() + ((y % 2 == 0) ? px : lat.lx() - 1 - px);
        ScheduleEvent e;
        e.kind = ScheduleEvent::Kind::Onsite;
        e.q0 = q;
        e.q1 = q + l;
        e.site_a = lat.site_at(col, y);
        e.dt_factor = 1.0;
        e.layer = layer_id;
        events.push_back(e);
      }
    }
    ++layer_id;
  };

  for (int step = 0; step < steps; ++step) {
    bool merge_head = step > 0;
    bool merge_tail = step + 1 < steps;
    for (size_t i = 0; i < pass.size(); ++i) {
      const ProtoLayer& proto = pass[i];
      double dt = (merge_head && proto.initial_vhops) ? 1.0 : 0.5;
      emit_layer(proto, false, dt, false);
    }
    emit_boundary_cz();
    emit_boundary_hops();
    emit_onsite();
    emit_boundary_hops();
    emit_boundary_cz();
    for (size_t i = pass.size(); i-- > 0;) {
      const ProtoLayer& proto = pass[i];
      bool skip = merge_tail && proto.initial_vhops;
      emit_layer(proto, true, 0.5, skip);
    }
  }
  return events;
}

}  // namespace fhsim
