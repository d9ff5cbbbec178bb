#include "fhsim/shots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fhsim {

int Bitstring::weight_in(int from, int to) const {
  int w = 0;
  for (int i = from; i < to; ++i) w += bit(i) ? 1 : 0;
  return w;
}

std::string Bitstring::to_string() const {
  std::string s(static_cast<size_t>(n_bits), '0');
  for (int i = 0; i < n_bits; ++i)
    if (bit(i)) s[static_cast<size_t>(i)] = '1';
  return s;
}

Bitstring Bitstring::parse(const std::string& s) {
  if (s.size() > 128) throw std::invalid_argument("bitstring longer than 128 modes");
  Bitstring z;
  z.n_bits = static_cast<int>(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') z.set_bit(static_cast<int>(i), true);
    else if (s[i] != '0') throw std::invalid_argument("bitstring must be 0/1");
  }
  return z;
}

std::vector<std::pair<double, double>> ShotTable::group_keys() const {
  std::vector<std::pair<double, double>> keys;
  for (const ShotRow& r : rows) {
    bool seen = false;
    for (const auto& k : keys)
      if (std::abs(k.first - r.time) < 1e-12 && std::abs(k.second - r.u) < 1e-12) {
        seen = true;
        break;
      }
    if (!seen) keys.push_back({r.time, r.u});
  }
  return keys;
}

std::vector<int> ShotTable::group(double time, double u) const {
  std::vector<int> idx;
  for (size_t i = 0; i < rows.size(); ++i)
    if (std::abs(rows[i].time - time) < 1e-12 && std::abs(rows[i].u - u) < 1e-12)
      idx.push_back(static_cast<int>(i));
  return idx;
}

std::vector<int> ShotTable::twirl_ids(const std::vector<int>& rows_idx) const {
  std::vector<int> ids;
  for (int i : rows_idx) ids.push_back(rows[static_cast<size_t>(i)].twirl_id);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

void ShotTable::write_csv(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << "time,U,twirl_id,bitstring\n";
  char buf[64];
  for (const ShotRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.10g,%.10g,%d,", r.time, r.u, r.twirl_id);
    f << buf << r.z.to_string() << "\n";
  }
}

ShotTable ShotTable::read_csv(const std::string& path, int lx, int ly) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  ShotTable table;
  table.lx = lx;
  table.ly = ly;
  std::string line;
  if (!std::getline(f, line)) throw std::runtime_error("empty shot file " + path);
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    ShotRow r;
    std::getline(ss, field, ',');
    r.time = std::stod(field);
    std::getline(ss, field, ',');
    r.u = std::stod(field);
    std::getline(ss, field, ',');
    r.twirl_id = std::stoi(field);
    std::getline(ss, field, ',');
    r.z = Bitstring::parse(field);
    if (r.z.n_bits != 2 * lx * ly)
      throw std::runtime_error("bitstring length does not match lattice");
    table.rows.push_back(r);
  }
  return table;
}

}  // namespace fhsim
