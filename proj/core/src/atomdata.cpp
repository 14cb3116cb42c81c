#include "dylr/atomdata.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace dylr::atomdata {

namespace {

[[noreturn]] void fail_line(int line_no, const std::string& what) {
  throw std::invalid_argument("linelist line " + std::to_string(line_no) + ": " + what);
}

void validate_line(const TransitionLine& t, int j_ground, int line_no) {
  if (t.excited_j < j_ground - 1 || t.excited_j > j_ground + 1)
    fail_line(line_no, "excited j must be within one unit of the ground j (dipole rule)");
  if (t.excited_j < 0) fail_line(line_no, "negative excited j");
  if (!(t.energy_au > 0.0)) fail_line(line_no, "excitation energy must be positive");
  if (t.strength < 0.0) fail_line(line_no, "negative strength");
}

}  // namespace

std::vector<TransitionLine> parse_linelist(std::istream& in, int j_ground) {
  std::vector<TransitionLine> lines;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream row(raw);

    TransitionLine t;
    if (!(row >> t.excited_j)) {
      std::string leftover;
      if (row.clear(), row >> leftover) fail_line(line_no, "expected `j energy strength [f|d2]`");
      continue;  // blank or comment-only line
    }
    if (!(row >> t.energy_au >> t.strength))
      fail_line(line_no, "expected `j energy strength [f|d2]`");

    std::string tag;
    if (row >> tag) {
      if (tag == "f")
        t.kind = StrengthKind::oscillator_strength;
      else if (tag == "d2")
        t.kind = StrengthKind::reduced_dipole_squared;
      else
        fail_line(line_no, "unknown strength tag `" + tag + "` (use f or d2)");
      std::string extra;
      if (row >> extra) fail_line(line_no, "trailing tokens after `" + tag + "`");
    }

    validate_line(t, j_ground, line_no);
    lines.push_back(t);
  }
  return lines;
}

std::vector<TransitionLine> load_linelist(const std::string& path, int j_ground) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open linelist file: " + path);
  return parse_linelist(in, j_ground);
}

std::vector<TransitionLine> effective_line_model(int j_ground, double energy_au) {
  std::vector<TransitionLine> lines;
  for (int je = j_ground - 1; je <= j_ground + 1; ++je)
    lines.push_back({je, energy_au, 1.0, StrengthKind::oscillator_strength});
  return lines;
}

double reduced_dipole_sq(const TransitionLine& line, int j_ground) {
  if (line.kind == StrengthKind::reduced_dipole_squared) return line.strength;
  // invert f = (2/3) dE |d|^2 / (2 j_g + 1)
  return 1.5 * (2 * j_ground + 1) * line.strength / line.energy_au;
}

KTensor::KTensor(int j_ground) : j_(j_ground) {
  if (j_ground < 1) throw std::invalid_argument("KTensor: ground j must be >= 1");
}

int KTensor::index(int ja, int jb) const {
  if (ja < j_ - 1 || ja > j_ + 1 || jb < j_ - 1 || jb > j_ + 1)
    throw std::out_of_range("KTensor: excited j outside {j-1, j, j+1}");
  return 3 * (ja - j_ + 1) + (jb - j_ + 1);
}

double KTensor::at(int ja, int jb) const { return k_[index(ja, jb)]; }

void KTensor::set(int ja, int jb, double value) {
  k_[index(ja, jb)] = value;
  k_[index(jb, ja)] = value;
}

KTensor build_k_tensor(const std::vector<TransitionLine>& lines, int j_ground) {
  if (lines.empty()) throw std::invalid_argument("build_k_tensor: empty line list");
  KTensor k(j_ground);
  for (int ja = j_ground - 1; ja <= j_ground + 1; ++ja)
    for (int jb = ja; jb <= j_ground + 1; ++jb) {
      double sum = 0.0;
      for (const auto& a : lines) {
        if (a.excited_j != ja) continue;
        const double da2 = reduced_dipole_sq(a, j_ground);
        for (const auto& b : lines) {
          if (b.excited_j != jb) continue;
          sum += da2 * reduced_dipole_sq(b, j_ground) / (a.energy_au + b.energy_au);
        }
      }
      k.set(ja, jb, sum);
    }
  return k;
}

KTensor baked_k_tensor() {
  KTensor k(8);
  k.set(7, 7, 71528.597);
  k.set(7, 8, 81313.663);
  k.set(7, 9, 88173.833);
  k.set(8, 8, 92438.922);
  k.set(8, 9, 100240.311);
  k.set(9, 9, 108705.654);
  return k;
}

}  // namespace dylr::atomdata
