#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fhsim {

/// Measured computational-basis outcome, mode 0 in bit 0 (leftmost in the
/// string form).  Two words cover up to 128 modes.
struct Bitstring {
  std::uint64_t lo = 0, hi = 0;
  int n_bits = 0;

  bool bit(int i) const {
    return i < 64 ? (lo >> i) & 1u : (hi >> (i - 64)) & 1u;
  }
  void set_bit(int i, bool v) {
    std::uint64_t m = std::uint64_t{1} << (i < 64 ? i : i - 64);
    auto& w = i < 64 ? lo : hi;
    if (v) w |= m;
    else w &= ~m;
  }
  int popcount() const {
    return __builtin_popcountll(lo) + __builtin_popcountll(hi);
  }
  /// Hamming weight restricted to modes [from, to).
  int weight_in(int from, int to) const;

  std::string to_string() const;
  static Bitstring parse(const std::string& s);
  bool operator==(const Bitstring& o) const {
    return lo == o.lo && hi == o.hi && n_bits == o.n_bits;
  }
};

struct ShotRow {
  double time = 0.0;
  double u = 0.0;
  int twirl_id = 0;
  Bitstring z;
};

/// Measured bitstrings keyed by (time, U, twirl instance) -- the universal
/// input of the observables and mitigation pipeline.
struct ShotTable {
  int lx = 0, ly = 0;
  std::vector<ShotRow> rows;

  int n_modes() const { return 2 * lx * ly; }

  /// Distinct (time, u) keys in first-appearance order.
  std::vector<std::pair<double, double>> group_keys() const;
  /// Row indices of one (time, u) group.
  std::vector<int> group(double time, double u) const;
  /// Distinct twirl ids within a row-index group, ascending.
  std::vector<int> twirl_ids(const std::vector<int>& rows_idx) const;

  void write_csv(const std::string& path) const;
  static ShotTable read_csv(const std::string& path, int lx, int ly);
};

}  // namespace fhsim
