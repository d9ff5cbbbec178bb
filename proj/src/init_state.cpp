#include "fhsim/init_state.hpp"

#include <algorithm>
#include <stdexcept>

namespace fhsim {

void InitState::validate(const Lattice& lat) const {
  std::vector<int> cover(static_cast<size_t>(lat.n_sites()), 0);
  auto touch = [&](int s) {
    if (s < 0 || s >= lat.n_sites()) throw std::invalid_argument("site out of range");
    ++cover[static_cast<size_t>(s)];
  };
  for (const auto& [a, b] : triplets) { touch(a); touch(b); }
  for (int h : holons) touch(h);
  for (int d : doublons) touch(d);
  for (int c : cover)
    if (c != 1) throw std::invalid_argument("initial state must cover every site exactly once");
  if (n_triplets() > 30) throw std::invalid_argument("too many triplets for 2^k pattern bookkeeping");
}

double InitState::mode_density(const Lattice& lat, int jw) const {
  auto [site, spin] = lat.mode_site(jw);
  (void)spin;
  for (int h : holons)
    if (h == site) return 0.0;
  for (int d : doublons)
    if (d == site) return 1.0;
  return 0.5;
}

double InitState::mode_pair_density(const Lattice& lat, int jw_a, int jw_b) const {
  if (jw_a == jw_b) return mode_density(lat, jw_a);
  auto [sa, spa] = lat.mode_site(jw_a);
  auto [sb, spb] = lat.mode_site(jw_b);
  // Same triplet (or same site): evaluate on the two Fock patterns.
  for (int k = 0; k < n_triplets(); ++k) {
    const auto& [a, b] = triplets[static_cast<size_t>(k)];
    bool a_in = (sa == a || sa == b), b_in = (sb == a || sb == b);
    if (a_in != b_in) return mode_density(lat, jw_a) * mode_density(lat, jw_b);
    if (a_in && b_in) {
      // Pattern A occupies (a,up),(b,down); pattern B occupies (b,up),(a,down).
      auto occ_a = [&](int site, Spin spin) { return (site == a && spin == Spin::Up) || (site == b && spin == Spin::Down); };
      auto occ_b = [&](int site, Spin spin) { return (site == b && spin == Spin::Up) || (site == a && spin == Spin::Down); };
      double pa = occ_a(sa, spa) && occ_a(sb, spb) ? 1.0 : 0.0;
      double pb = occ_b(sa, spa) && occ_b(sb, spb) ? 1.0 : 0.0;
      return 0.5 * (pa + pb);
    }
  }
  if (sa == sb) {
    // Holon or doublon site: occupations are deterministic.
    return mode_density(lat, jw_a) * mode_density(lat, jw_b) == 1.0 ? 1.0 : 0.0;
  }
  return mode_density(lat, jw_a) * mode_density(lat, jw_b);
}

std::pair<uint64_t, uint64_t> InitState::fock_mask(const Lattice& lat, uint32_t pattern) const {
  uint64_t lo = 0, hi = 0;
  auto set = [&](int jw) {
    if (jw < 64) lo |= (uint64_t{1} << jw);
    else hi |= (uint64_t{1} << (jw - 64));
  };
  for (int d : doublons) {
    set(lat.jw_index(d, Spin::Up));
    set(lat.jw_index(d, Spin::Down));
  }
  for (int k = 0; k < n_triplets(); ++k) {
    const auto& [a, b] = triplets[static_cast<size_t>(k)];
    if ((pattern >> k) & 1u) {  // pattern B
      set(lat.jw_index(b, Spin::Up));
      set(lat.jw_index(a, Spin::Down));
    } else {  // pattern A
      set(lat.jw_index(a, Spin::Up));
      set(lat.jw_index(b, Spin::Down));
    }
  }
  return {lo, hi};
}

double InitState::fock_sign(uint32_t pattern) const {
  return (__builtin_popcount(pattern) % 2 == 0) ? 1.0 : -1.0;
}

InitState paper_init_state() {
  InitState st;
  st.holons = {0};
  st.doublons = {13};
  for (int s = 1; s < 13; s += 2) st.triplets.push_back({s, s + 1});
  for (int s = 14; s < 27; s += 2) st.triplets.push_back({s, s + 1});
  return st;
}

InitState default_init_state(const Lattice& lat) {
  int l = lat.n_sites();
  InitState st;
  auto pair_range = [&](int lo, int hi) {  // inclusive, pairs (lo,lo+1)...
    for (int s = lo; s + 1 <= hi; s += 2) st.triplets.push_back({s, s + 1});
  };
  if (l % 4 == 0) {
    int d = (l / 2 - 1) % 2 == 1 ? l / 2 - 1 : l / 2;
    st.holons = {0};
    st.doublons = {d};
    pair_range(1, d - 1);
    pair_range(d + 1, l - 1);
  } else if (l % 4 == 2) {
    st.holons = {0, l - 2, l - 1};
    st.doublons = {l / 2};
    pair_range(1, l / 2 - 1);
    pair_range(l / 2 + 1, l - 3);
  } else if (l % 4 == 1) {
    st.holons = {0, l - 1};
    st.doublons = {3};
    pair_range(1, 2);
    pair_range(4, l - 2);
  } else {  // l % 4 == 3
    st.holons = {0};
    st.doublons = {1, 2};
    pair_range(3, l - 1);
  }
  st.validate(lat);
  if (st.sector_particles() % 2 != 0)
    throw std::logic_error("default initial state failed to reach even sector parity");
  return st;
}

}  // namespace fhsim
