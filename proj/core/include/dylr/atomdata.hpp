#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

// Atomic transition input data and the dispersion sums built from it.

namespace dylr::atomdata {

enum class StrengthKind { oscillator_strength, reduced_dipole_squared };

struct TransitionLine {
  int excited_j = 0;       // angular momentum of the upper level
  double energy_au = 0.0;  // excitation energy, Hartree (> 0)
  double strength = 0.0;   // interpreted per `kind` (>= 0)
  StrengthKind kind = StrengthKind::oscillator_strength;
};

// Text format, one transition per line:
//
//   <excited_j> <energy_au> <strength> [f|d2]
//
// `f` (default) marks an absorption oscillator strength, `d2` a squared
// reduced dipole matrix element in atomic units.  '#' starts a comment.
// Malformed rows and unphysical values throw std::invalid_argument with the
// 1-based line number in the message.
std::vector<TransitionLine> parse_linelist(std::istream& in, int j_ground = 8);
std::vector<TransitionLine> load_linelist(const std::string& path, int j_ground = 8);

// Coarse single-line-per-channel stand-in when no measured list is supplied:
// one effective transition to each excited j with f = 1 and dE = 0.1 Hartree.
std::vector<TransitionLine> effective_line_model(int j_ground = 8, double energy_au = 0.1);

// |<j_g || d || j_e>|^2 in atomic units.  Oscillator strengths convert via
// f = (2/3) dE |d|^2 / (2 j_g + 1).
double reduced_dipole_sq(const TransitionLine& line, int j_ground);

// Second-order dispersion sums K(ja, jb) over excited channels ja, jb of the
// two atoms:  K = sum_{a,b} |d_a|^2 |d_b|^2 / (dE_a + dE_b), restricted to
// lines with excited_j == ja (jb).  Symmetric, positive, 3x3 over
// ja, jb in {j-1, j, j+1}.
class KTensor {
 public:
  explicit KTensor(int j_ground);

  int j_ground() const { return j_; }
  double at(int ja, int jb) const;
  void set(int ja, int jb, double value);  // writes (ja,jb) and (jb,ja)

 private:
  int index(int ja, int jb) const;

  int j_;
  std::array<double, 9> k_{};
};

KTensor build_k_tensor(const std::vector<TransitionLine>& lines, int j_ground = 8);

// Reference dispersion sums for the Dy ground level (j = 8), atomic units,
// precomputed from relativistic structure data for the full transition
// spectrum.  The source tabulation is rounded to 1e-3 and rounds the two
// mirror (7,8) entries differently in the last digit; the larger value is
// kept for both so the tensor stays exactly symmetric.
KTensor baked_k_tensor();

}  // namespace dylr::atomdata
