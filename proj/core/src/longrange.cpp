#include "dylr/longrange.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "dylr/units.hpp"

namespace dylr::longrange {

namespace {

using EigenRowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const EigenRowMajor>;

ConstMap map_of(const Matrix& m) { return ConstMap(m.data(), m.rows(), m.cols()); }

Matrix from_eigen(const Eigen::MatrixXd& e) {
  Matrix m(static_cast<int>(e.rows()), static_cast<int>(e.cols()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) m(r, c) = e(r, c);
  return m;
}

// All 3-j factors a dipole coupling j <-> ja in {j-1, j, j+1} can need, built
// once per j:  (j 1 ja; -m, m-ma, ma).
class Dipole3jTable {
 public:
  explicit Dipole3jTable(int j) : j_(j) {
    for (int a = 0; a < 3; ++a) {
      const int ja = j - 1 + a;
      if (ja < 0) continue;
      v_[a].assign(static_cast<std::size_t>(2 * j + 1) * (2 * ja + 1), 0.0);
      for (int m = -j; m <= j; ++m)
        for (int ma = std::max(-ja, m - 1); ma <= std::min(ja, m + 1); ++ma)
          v_[a][slot(a, m, ma)] = angular::wigner3j_i(j, 1, ja, -m, m - ma, ma);
    }
  }

  // Requires |m| <= j, |ma| <= ja, |m - ma| <= 1.
  double operator()(int ja, int m, int ma) const {
    return v_[ja - j_ + 1][slot(ja - j_ + 1, m, ma)];
  }

 private:
  std::size_t slot(int a, int m, int ma) const {
    const int ja = j_ - 1 + a;
    return static_cast<std::size_t>(m + j_) * (2 * ja + 1) + (ma + ja);
  }

  int j_;
  std::array<std::vector<double>, 3> v_;
};

const Dipole3jTable& dipole_table(int j) {
  static std::mutex guard;
  static std::map<int, std::unique_ptr<Dipole3jTable>> cache;
  const std::scoped_lock lock(guard);
  auto& slot = cache[j];
  if (!slot) slot = std::make_unique<Dipole3jTable>(j);
  return *slot;
}

void check_channel(int ja, int j, const char* who) {
  if (ja < 0 || ja < j - 1 || ja > j + 1)
    throw std::domain_error(std::string(who) + ": excited j must lie within one unit of j");
}

double a_tensor_cached(const Dipole3jTable& t, int m1, int m2, int m1p, int m2p,
                       int ja, int jb) {
  if (m1 + m2 != m1p + m2p) return 0.0;
  const int omega = m1 + m2;
  double sum = 0.0;
  for (int ma = std::max(-ja, omega - jb); ma <= std::min(ja, omega + jb); ++ma) {
    const int mb = omega - ma;
    if (std::abs(m1 - ma) > 1 || std::abs(m2 - mb) > 1) continue;
    if (std::abs(m1p - ma) > 1 || std::abs(m2p - mb) > 1) continue;
    // q = 0 couplings enter the dipole-dipole operator with twice the weight
    // of q = +-1; omega conservation ties the two atoms' q together.
    const double dfac = (m1 == ma ? 2.0 : 1.0) * (m1p == ma ? 2.0 : 1.0);
    sum += dfac * t(ja, m1, ma) * t(jb, m2, mb) * t(ja, m1p, ma) * t(jb, m2p, mb);
  }
  return sum;
}

double ladder(int j, int m, int step) {  // <j m+step| j+- |j m>, step = +-1
  return std::sqrt(static_cast<double>(j * (j + 1) - m * (m + step)));
}

OmegaBlock project_block(Matrix pair_matrix, int omega, Parity parity, int power, int j) {
  OmegaBlock block;
  block.omega = omega;
  block.parity = parity;
  block.power = power;
  block.basis = angular::symmetrized_basis(omega, parity, j);
  const auto t = map_of(block.basis.transform);
  Eigen::MatrixXd projected = t * map_of(pair_matrix) * t.transpose();
  projected = 0.5 * (projected + projected.transpose()).eval();  // kill roundoff skew
  block.coefficients = from_eigen(projected);
  return block;
}

}  // namespace

double a_tensor(int m1, int m2, int m1p, int m2p, int ja, int jb, int j) {
  if (j < 1) throw std::domain_error("a_tensor: ground j must be >= 1");
  check_channel(ja, j, "a_tensor");
  check_channel(jb, j, "a_tensor");
  for (int m : {m1, m2, m1p, m2p})
    if (std::abs(m) > j) throw std::domain_error("a_tensor: |m| exceeds j");
  return a_tensor_cached(dipole_table(j), m1, m2, m1p, m2p, ja, jb);
}

Matrix c6_pair_matrix(const atomdata::KTensor& k, int omega) {
  const int j = k.j_ground();
  const auto basis = angular::pair_basis(j, omega);
  const auto& t = dipole_table(j);
  const int n = static_cast<int>(basis.size());
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int ip = i; ip < n; ++ip) {
      double val = 0.0;
      for (int ja = j - 1; ja <= j + 1; ++ja)
        for (int jb = j - 1; jb <= j + 1; ++jb)
          val += k.at(ja, jb) * a_tensor_cached(t, basis[i].m1, basis[i].m2,
                                                basis[ip].m1, basis[ip].m2, ja, jb);
      m(i, ip) = val;
      m(ip, i) = val;
    }
  return m;
}

Matrix c6_pair_matrix_direct(const std::vector<atomdata::TransitionLine>& lines,
                             int omega, int j_ground) {
  if (lines.empty()) throw std::invalid_argument("c6_pair_matrix_direct: empty line list");
  const int j = j_ground;
  const auto basis = angular::pair_basis(j, omega);
  const int n = static_cast<int>(basis.size());
  Matrix m(n, n);
  std::vector<double> amp(n);

  for (const auto& a : lines) {
    const double da = std::sqrt(atomdata::reduced_dipole_sq(a, j));
    const int ja = a.excited_j;
    for (const auto& b : lines) {
      const double db = std::sqrt(atomdata::reduced_dipole_sq(b, j));
      const int jb = b.excited_j;
      const double denom = a.energy_au + b.energy_au;

      // Second-order sum over the intermediate pair levels |ja ma>|jb mb>;
      // the dipole-dipole operator conserves omega, so mb = omega - ma.
      for (int ma = std::max(-ja, omega - jb); ma <= std::min(ja, omega + jb); ++ma) {
        const int mb = omega - ma;
        bool any = false;
        for (int i = 0; i < n; ++i) {
          const int m1 = basis[i].m1, m2 = basis[i].m2;
          const int q = m1 - ma;
          amp[i] = 0.0;
          if (std::abs(q) > 1 || std::abs(m2 - mb) > 1) continue;
          const double wq = (q == 0) ? -2.0 : -1.0;
          const double sgn1 = ((j - m1) % 2 == 0) ? 1.0 : -1.0;
          const double sgn2 = ((j - m2) % 2 == 0) ? 1.0 : -1.0;
          amp[i] = wq * sgn1 * angular::wigner3j_i(j, 1, ja, -m1, q, ma) * da *
                   sgn2 * angular::wigner3j_i(j, 1, jb, -m2, -q, mb) * db;
          if (amp[i] != 0.0) any = true;
        }
        if (!any) continue;
        for (int i = 0; i < n; ++i) {
          if (amp[i] == 0.0) continue;
          for (int ip = 0; ip < n; ++ip) m(i, ip) += amp[i] * amp[ip] / denom;
        }
      }
    }
  }
  return m;
}

EquivalenceReport validate_c6_equivalence(const std::vector<atomdata::TransitionLine>& lines,
                                          int j_ground, double tolerance) {
  const atomdata::KTensor k = atomdata::build_k_tensor(lines, j_ground);
  EquivalenceReport report;
  report.tolerance = tolerance;
  for (int omega = 0; omega <= 2 * j_ground; ++omega) {
    const Matrix closed = c6_pair_matrix(k, omega);
    const Matrix direct = c6_pair_matrix_direct(lines, omega, j_ground);
    double scale = 0.0;
    for (int i = 0; i < direct.rows(); ++i)
      for (int c = 0; c < direct.cols(); ++c) scale = std::max(scale, std::abs(direct(i, c)));
    if (scale == 0.0) scale = 1.0;
    for (int i = 0; i < direct.rows(); ++i)
      for (int c = 0; c < direct.cols(); ++c) {
        const double dev = std::abs(closed(i, c) - direct(i, c)) / scale;
        if (dev > report.max_abs_deviation) {
          report.max_abs_deviation = dev;
          report.worst_omega = omega;
        }
      }
  }
  report.within_tolerance = report.max_abs_deviation <= tolerance;
  return report;
}

OmegaBlock build_c6_block(const atomdata::KTensor& k, int omega, Parity parity) {
  return project_block(c6_pair_matrix(k, omega), omega, parity, 6, k.j_ground());
}

OmegaBlock build_c3_block(int omega, Parity parity, double g_j, int j) {
  const auto basis = angular::pair_basis(j, omega);
  const int n = static_cast<int>(basis.size());
  std::map<std::pair<int, int>, int> index;
  for (int i = 0; i < n; ++i) index[{basis[i].m1, basis[i].m2}] = i;

  // j1.j2 - 3 j1z j2z over the pair basis: diagonal -2 m1 m2 plus the
  // projection-conserving ladder terms (1/2)(j1+ j2- + j1- j2+).
  Matrix op(n, n);
  for (int i = 0; i < n; ++i) {
    const int m1 = basis[i].m1, m2 = basis[i].m2;
    op(i, i) += -2.0 * m1 * m2;
    if (auto it = index.find({m1 + 1, m2 - 1}); it != index.end())
      op(it->second, i) += 0.5 * ladder(j, m1, +1) * ladder(j, m2, -1);
    if (auto it = index.find({m1 - 1, m2 + 1}); it != index.end())
      op(it->second, i) += 0.5 * ladder(j, m1, -1) * ladder(j, m2, +1);
  }

  // U_mdd = alpha^2 (g_j mu_B)^2 (j1.j2 - 3 j1z j2z) / R^3 = -C3/R^3.
  const double alpha = units::constants.fine_structure_alpha;
  const double moment = g_j * units::constants.bohr_magneton_au;
  const double factor = -alpha * alpha * moment * moment;
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < n; ++c) op(i, c) *= factor;

  return project_block(std::move(op), omega, parity, 3, j);
}

AdiabaticSpectrum adiabatic_coefficients(const OmegaBlock& block) {
  const int n = block.coefficients.rows();
  if (n == 0) throw std::domain_error("adiabatic_coefficients: empty block");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(map_of(block.coefficients));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("adiabatic_coefficients: eigensolver failed");

  AdiabaticSpectrum spectrum;
  spectrum.omega = block.omega;
  spectrum.parity = block.parity;
  spectrum.power = block.power;
  spectrum.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  spectrum.vectors = from_eigen(solver.eigenvectors());
  return spectrum;
}

namespace {

template <typename BlockBuilder>
std::vector<AdiabaticSpectrum> all_spectra(int j, BlockBuilder&& build) {
  std::vector<AdiabaticSpectrum> out;
  for (int omega = 0; omega <= 2 * j; ++omega)
    for (const Parity parity : {Parity::gerade, Parity::ungerade}) {
      OmegaBlock block = build(omega, parity);
      if (block.coefficients.rows() == 0) continue;
      out.push_back(adiabatic_coefficients(block));
    }
  return out;
}

}  // namespace

std::vector<AdiabaticSpectrum> c6_spectra(const atomdata::KTensor& k) {
  return all_spectra(k.j_ground(), [&](int omega, Parity parity) {
    return build_c6_block(k, omega, parity);
  });
}

std::vector<AdiabaticSpectrum> c3_spectra(double g_j, int j) {
  return all_spectra(j, [&](int omega, Parity parity) {
    return build_c3_block(omega, parity, g_j, j);
  });
}

Matrix combined_matrix(const OmegaBlock& c6, const OmegaBlock& c3, double r) {
  if (c6.omega != c3.omega || c6.parity != c3.parity)
    throw std::invalid_argument("combined_matrix: blocks belong to different symmetries");
  if (c6.power != 6 || c3.power != 3)
    throw std::invalid_argument("combined_matrix: expected an R^-6 and an R^-3 block");
  if (!(r > 0.0)) throw std::invalid_argument("combined_matrix: separation must be positive");
  const int n = c6.coefficients.rows();
  if (n != c3.coefficients.rows())
    throw std::invalid_argument("combined_matrix: block dimensions differ");

  const double r3 = r * r * r;
  const double r6 = r3 * r3;
  Matrix w(n, n);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < n; ++c)
      w(i, c) = -c6.coefficients(i, c) / r6 - c3.coefficients(i, c) / r3;
  return w;
}

PotentialCurves combined_adiabats(const OmegaBlock& c6, const OmegaBlock& c3,
                                  const std::vector<double>& r_grid) {
  if (r_grid.empty()) throw std::invalid_argument("combined_adiabats: empty radial grid");
  if (!std::is_sorted(r_grid.begin(), r_grid.end()) || !(r_grid.front() > 0.0))
    throw std::invalid_argument("combined_adiabats: grid must be positive and ascending");
  const int n = c6.coefficients.rows();
  if (n == 0) throw std::domain_error("combined_adiabats: empty block");

  PotentialCurves curves;
  curves.omega = c6.omega;
  curves.parity = c6.parity;
  curves.r_grid = r_grid;
  curves.energy.assign(n, std::vector<double>(r_grid.size(), 0.0));

  Eigen::MatrixXd prev_vectors;
  std::vector<int> column_of(n);  // eigencolumn currently holding curve c

  for (std::size_t ir = 0; ir < r_grid.size(); ++ir) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        map_of(combined_matrix(c6, c3, r_grid[ir])));
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("combined_adiabats: eigensolver failed");
    const Eigen::MatrixXd& vectors = solver.eigenvectors();

    if (ir == 0) {
      // Labels fixed by the energy order where dispersion dominates.
      for (int c = 0; c < n; ++c) column_of[c] = c;
    } else {
      // Follow each curve to the eigenvector it overlaps most: greedy
      // assignment over all (curve, column) pairs, largest overlap first.
      const Eigen::MatrixXd overlap = prev_vectors.transpose() * vectors;
      struct Cand {
        double mag;
        int curve;
        int col;
      };
      std::vector<Cand> cands;
      cands.reserve(static_cast<std::size_t>(n) * n);
      for (int c = 0; c < n; ++c)
        for (int col = 0; col < n; ++col)
          cands.push_back({std::abs(overlap(column_of[c], col)), c, col});
      std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.mag != b.mag) return a.mag > b.mag;
        if (a.curve != b.curve) return a.curve < b.curve;
        return a.col < b.col;
      });
      std::vector<bool> curve_done(n, false), col_done(n, false);
      std::vector<int> next_column(n, -1);
      int assigned = 0;
      for (const Cand& cand : cands) {
        if (assigned == n) break;
        if (curve_done[cand.curve] || col_done[cand.col]) continue;
        next_column[cand.curve] = cand.col;
        curve_done[cand.curve] = true;
        col_done[cand.col] = true;
        ++assigned;
      }
      column_of = next_column;
    }

    for (int c = 0; c < n; ++c)
      curves.energy[c][ir] = solver.eigenvalues()(column_of[c]);
    prev_vectors = vectors;
  }
  return curves;
}

double qq_interaction_scale(double q_au, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("qq_interaction_scale: separation must be positive");
  const double r5 = r * r * r * r * r;
  return q_au * q_au / r5;
}

}  // namespace dylr::longrange
