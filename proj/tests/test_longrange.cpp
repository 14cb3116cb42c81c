#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "dylr/angular.hpp"
#include "dylr/atomdata.hpp"
#include "dylr/longrange.hpp"
#include "dylr/units.hpp"

using namespace dylr;
using angular::Parity;

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajor> emap(const Matrix& m) {
  return Eigen::Map<const RowMajor>(m.data(), m.rows(), m.cols());
}

std::vector<atomdata::TransitionLine> toy_lines() {
  std::istringstream in(
      "7 0.080 0.9\n"
      "8 0.100 1.1\n"
      "9 0.120 0.7\n");
  return atomdata::parse_linelist(in);
}

// Same angular factors as a_tensor but with the two intermediate projections
// summed independently, i.e. without tying mb to omega - ma.  Used as a foil:
// the dipole-dipole operator conserves omega, and keeping the unconserving
// routes changes the answer.
double a_tensor_free_sum(int m1, int m2, int m1p, int m2p, int ja, int jb) {
  const int j = 8;
  double sum = 0.0;
  for (int ma = -ja; ma <= ja; ++ma)
    for (int mb = -jb; mb <= jb; ++mb) {
      if (std::abs(m1 - ma) > 1 || std::abs(m2 - mb) > 1) continue;
      if (std::abs(m1p - ma) > 1 || std::abs(m2p - mb) > 1) continue;
      const double dfac = (m1 == ma ? 2.0 : 1.0) * (m1p == ma ? 2.0 : 1.0);
      sum += dfac * angular::wigner3j_i(j, 1, ja, -m1, m1 - ma, ma) *
             angular::wigner3j_i(j, 1, jb, -m2, m2 - mb, mb) *
             angular::wigner3j_i(j, 1, ja, -m1p, m1p - ma, ma) *
             angular::wigner3j_i(j, 1, jb, -m2p, m2p - mb, mb);
    }
  return sum;
}

}  // namespace

TEST_CASE("angular weight of the dispersion sum: reference values") {
  CHECK(longrange::a_tensor(8, 8, 8, 8, 9, 9) == doctest::Approx(1.730044639175e-4).epsilon(1e-9));
  CHECK(longrange::a_tensor(8, 8, 8, 8, 7, 9) == doctest::Approx(3.095975232198e-3).epsilon(1e-9));
  CHECK(longrange::a_tensor(0, 0, 1, -1, 8, 8) == doctest::Approx(4.805843906190e-5).epsilon(1e-9));
}

TEST_CASE("angular weight vanishes between different omega sectors") {
  CHECK(longrange::a_tensor(1, 0, 0, 0, 8, 8) == 0.0);
  CHECK(longrange::a_tensor(8, 8, 8, 7, 9, 9) == 0.0);
}

TEST_CASE("angular weight is symmetric bra <-> ket") {
  for (int ja = 7; ja <= 9; ++ja)
    for (int jb = 7; jb <= 9; ++jb) {
      CHECK(longrange::a_tensor(2, -2, 1, -1, ja, jb) ==
            doctest::Approx(longrange::a_tensor(1, -1, 2, -2, ja, jb)).epsilon(1e-14));
      CHECK(longrange::a_tensor(3, 0, 2, 1, ja, jb) ==
            doctest::Approx(longrange::a_tensor(2, 1, 3, 0, ja, jb)).epsilon(1e-14));
    }
}

TEST_CASE("angular weight rejects bad labels") {
  CHECK_THROWS_AS(longrange::a_tensor(0, 0, 0, 0, 5, 8), std::domain_error);
  CHECK_THROWS_AS(longrange::a_tensor(9, 0, 9, 0, 8, 8), std::domain_error);
}

TEST_CASE("only omega-conserving intermediate projections contribute") {
  const double constrained = longrange::a_tensor(0, 0, 0, 0, 8, 8);
  const double free_sum = a_tensor_free_sum(0, 0, 0, 0, 8, 8);
  CHECK(constrained > 0.0);
  // The free double sum admits extra (ma, mb) routes and visibly disagrees.
  CHECK(std::abs(free_sum - constrained) / constrained > 0.3);
}

TEST_CASE("dispersion pair matrix") {
  const auto k = atomdata::baked_k_tensor();

  SUBCASE("stretched pair is a single state") {
    const Matrix m = longrange::c6_pair_matrix(k, 16);
    REQUIRE(m.rows() == 1);
    CHECK(m(0, 0) == doctest::Approx(1889.85626363).epsilon(1e-9));
  }

  SUBCASE("symmetric with positive diagonal") {
    const Matrix m = longrange::c6_pair_matrix(k, 3);
    for (int i = 0; i < m.rows(); ++i) {
      CHECK(m(i, i) > 0.0);
      for (int c = 0; c < m.cols(); ++c)
        CHECK(m(i, c) == doctest::Approx(m(c, i)).epsilon(1e-15));
    }
  }
}

TEST_CASE("closed-form assembly matches the direct perturbation sum") {
  SUBCASE("single-energy effective model") {
    const auto report = longrange::validate_c6_equivalence(atomdata::effective_line_model());
    CHECK(report.within_tolerance);
    CHECK(report.max_abs_deviation <= 1e-10);
  }
  SUBCASE("irregular multi-line list") {
    const auto report = longrange::validate_c6_equivalence(toy_lines());
    CHECK(report.within_tolerance);
    CHECK(report.max_abs_deviation <= 1e-10);
  }
}

TEST_CASE("symmetrized blocks jointly carry the whole pair matrix") {
  const auto k = atomdata::baked_k_tensor();
  for (int omega : {0, 5}) {
    const Matrix pair = longrange::c6_pair_matrix(k, omega);
    const auto g = longrange::build_c6_block(k, omega, Parity::gerade);
    const auto u = longrange::build_c6_block(k, omega, Parity::ungerade);

    const auto tg = emap(g.basis.transform);
    const auto tu = emap(u.basis.transform);
    const Eigen::MatrixXd rebuilt = tg.transpose() * emap(g.coefficients) * tg +
                                    tu.transpose() * emap(u.coefficients) * tu;
    const double err = (rebuilt - emap(pair)).cwiseAbs().maxCoeff();
    CHECK(err < 1e-10);

    const double trace_pair = emap(pair).trace();
    const double trace_blocks = emap(g.coefficients).trace() + emap(u.coefficients).trace();
    CHECK(trace_blocks == doctest::Approx(trace_pair).epsilon(1e-12));
  }
}

TEST_CASE("dispersion adiabats") {
  const auto spectra = longrange::c6_spectra(atomdata::baked_k_tensor());

  int total = 0, gerade = 0, ungerade = 0;
  double lo = 1e30, hi = -1e30;
  for (const auto& s : spectra) {
    REQUIRE(std::is_sorted(s.values.begin(), s.values.end()));
    total += static_cast<int>(s.values.size());
    (s.parity == Parity::gerade ? gerade : ungerade) += static_cast<int>(s.values.size());
    lo = std::min(lo, s.values.front());
    hi = std::max(hi, s.values.back());
  }
  CHECK(total == 153);
  CHECK(gerade == 81);
  CHECK(ungerade == 72);
  CHECK(lo == doctest::Approx(1863.501975).epsilon(1e-8));
  CHECK(hi == doctest::Approx(1890.121111).epsilon(1e-8));
  CHECK(hi - lo == doctest::Approx(26.619135).epsilon(1e-6));

  // omega = 0 gerade block, ascending.
  const std::vector<double> want = {1863.501975, 1864.0858, 1865.2394, 1867.2893, 1870.1713,
                                    1873.8877,   1878.4454, 1883.8530, 1890.1211};
  const auto it = std::find_if(spectra.begin(), spectra.end(), [](const auto& s) {
    return s.omega == 0 && s.parity == Parity::gerade;
  });
  REQUIRE(it != spectra.end());
  REQUIRE(it->values.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i)
    CHECK(std::abs(it->values[i] - want[i]) < 5e-3);

  // The stretched sector survives only as a single gerade state.
  int n16 = 0;
  for (const auto& s : spectra)
    if (s.omega == 16) {
      ++n16;
      CHECK(s.parity == Parity::gerade);
      REQUIRE(s.values.size() == 1);
      CHECK(s.values[0] == doctest::Approx(1889.85626363).epsilon(1e-9));
    }
  CHECK(n16 == 1);
}

TEST_CASE("eigenvectors of a block are orthonormal") {
  const auto block = longrange::build_c6_block(atomdata::baked_k_tensor(), 0, Parity::gerade);
  const auto spectrum = longrange::adiabatic_coefficients(block);
  const auto v = emap(spectrum.vectors);
  const double err = (v.transpose() * v - Eigen::MatrixXd::Identity(v.cols(), v.cols()))
                         .cwiseAbs()
                         .maxCoeff();
  CHECK(err < 1e-12);

  // And the decomposition reproduces the block.
  Eigen::VectorXd evals =
      Eigen::Map<const Eigen::VectorXd>(spectrum.values.data(), static_cast<long>(spectrum.values.size()));
  const double res =
      (v * evals.asDiagonal() * v.transpose() - emap(block.coefficients)).cwiseAbs().maxCoeff();
  CHECK(res < 1e-9);
}

TEST_CASE("empty blocks are rejected") {
  const auto k = atomdata::baked_k_tensor();
  const auto u16 = longrange::build_c6_block(k, 16, Parity::ungerade);
  CHECK(u16.coefficients.rows() == 0);
  CHECK_THROWS_AS(longrange::adiabatic_coefficients(u16), std::domain_error);
}

TEST_CASE("magnetic dipole-dipole coefficients") {
  const double g_j = units::constants.g_factor_gj;
  const double alpha = units::constants.fine_structure_alpha;

  SUBCASE("stretched pair, head-to-tail attractive") {
    const auto block = longrange::build_c3_block(16, Parity::gerade, g_j);
    REQUIRE(block.coefficients.rows() == 1);
    const double want = 128.0 * alpha * alpha * (g_j / 2.0) * (g_j / 2.0);
    CHECK(block.coefficients(0, 0) == doctest::Approx(want).epsilon(1e-12));
    CHECK(block.coefficients(0, 0) == doctest::Approx(2.626861e-3).epsilon(1e-6));
  }

  SUBCASE("reference spectra") {
    const auto spectra = longrange::c3_spectra(g_j);

    auto block_values = [&](int omega, Parity parity) -> std::vector<double> {
      for (const auto& s : spectra)
        if (s.omega == omega && s.parity == parity) return s.values;
      return {};
    };

    const std::vector<double> g0 = {-2.6738e-3, -2.15511e-3, -1.73531e-3, -1.4736e-3,
                                    -1.19188e-3, -0.74167e-3, -0.17527e-3, 0.49804e-3,
                                    1.27548e-3};
    const std::vector<double> u0 = {-2.6738e-3, -2.15509e-3, -1.73062e-3, -1.3806e-3,
                                    -0.98298e-3, -0.47212e-3, 0.14825e-3, 0.87385e-3};
    const std::vector<double> g8 = {-0.48542e-3, -0.2133e-3, 0.26208e-3, 0.87634e-3, 1.61253e-3};
    const std::vector<double> u8 = {-0.3927e-3, 0.00516e-3, 0.55324e-3, 1.22981e-3};

    for (const auto& [omega, parity, want] :
         std::vector<std::tuple<int, Parity, std::vector<double>>>{
             {0, Parity::gerade, g0}, {0, Parity::ungerade, u0},
             {8, Parity::gerade, g8}, {8, Parity::ungerade, u8}}) {
      const auto got = block_values(omega, parity);
      REQUIRE(got.size() == want.size());
      for (std::size_t i = 0; i < want.size(); ++i)
        CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-7).scale(1));
    }
  }

  SUBCASE("tracelessness and sign balance over the full space") {
    const auto spectra = longrange::c3_spectra(g_j);
    double weighted_sum = 0.0;
    int positive = 0, negative = 0;
    for (const auto& s : spectra) {
      const double weight = s.omega == 0 ? 1.0 : 2.0;  // +-omega degeneracy
      for (double v : s.values) {
        weighted_sum += weight * v;
        (v > 0.0 ? positive : negative) += 1;
      }
    }
    CHECK(std::abs(weighted_sum) < 1e-10);
    CHECK(positive == 74);
    CHECK(negative == 79);
  }
}

TEST_CASE("combined interaction matrix") {
  const auto k = atomdata::baked_k_tensor();
  const double g_j = units::constants.g_factor_gj;
  const auto c6 = longrange::build_c6_block(k, 16, Parity::gerade);
  const auto c3 = longrange::build_c3_block(16, Parity::gerade, g_j);

  const double r = 50.0;
  const Matrix w = longrange::combined_matrix(c6, c3, r);
  const double want = -c6.coefficients(0, 0) / std::pow(r, 6) - c3.coefficients(0, 0) / std::pow(r, 3);
  CHECK(w(0, 0) == doctest::Approx(want).epsilon(1e-15));

  const auto c3_other = longrange::build_c3_block(15, Parity::gerade, g_j);
  CHECK_THROWS_AS(longrange::combined_matrix(c6, c3_other, r), std::invalid_argument);
  CHECK_THROWS_AS(longrange::combined_matrix(c3, c3, r), std::invalid_argument);
  CHECK_THROWS_AS(longrange::combined_matrix(c6, c3, -1.0), std::invalid_argument);
}

TEST_CASE("combined adiabats follow eigenvectors through a crossing") {
  // Synthetic 2x2 block pair engineered so the two curves cross near
  // r = (9 / 2e-4)^(1/3) ~ 35.6: the deeper dispersion curve carries the
  // repulsive r^-3 piece and must end up on top at large r.
  longrange::OmegaBlock b6;
  b6.omega = 0;
  b6.parity = Parity::gerade;
  b6.power = 6;
  b6.coefficients = Matrix(2, 2);
  b6.coefficients(0, 0) = 10.0;
  b6.coefficients(1, 1) = 1.0;

  longrange::OmegaBlock b3 = b6;
  b3.power = 3;
  b3.coefficients = Matrix(2, 2);
  b3.coefficients(0, 0) = -1e-4;
  b3.coefficients(1, 1) = 1e-4;

  std::vector<double> grid;
  for (int i = 0; i <= 180; ++i) grid.push_back(20.0 + i);

  const auto curves = longrange::combined_adiabats(b6, b3, grid);
  REQUIRE(curves.energy.size() == 2);

  for (std::size_t ir = 0; ir < grid.size(); ++ir) {
    const double r = grid[ir];
    const double first = -10.0 / std::pow(r, 6) + 1e-4 / std::pow(r, 3);
    const double second = -1.0 / std::pow(r, 6) - 1e-4 / std::pow(r, 3);
    CHECK(curves.energy[0][ir] == doctest::Approx(first).epsilon(1e-9).scale(1e-7));
    CHECK(curves.energy[1][ir] == doctest::Approx(second).epsilon(1e-9).scale(1e-7));
  }
  // Labeled ascending at the first point, genuinely reordered at the last.
  CHECK(curves.energy[0][0] < curves.energy[1][0]);
  CHECK(curves.energy[0].back() > curves.energy[1].back());
}

TEST_CASE("combined adiabats on a physical block") {
  const auto k = atomdata::baked_k_tensor();
  const double g_j = units::constants.g_factor_gj;
  const auto c6 = longrange::build_c6_block(k, 0, Parity::gerade);
  const auto c3 = longrange::build_c3_block(0, Parity::gerade, g_j);

  std::vector<double> grid;
  for (int i = 0; i <= 180; ++i) grid.push_back(20.0 + i);
  const auto curves = longrange::combined_adiabats(c6, c3, grid);
  REQUIRE(curves.energy.size() == 9);
  REQUIRE(curves.r_grid.size() == grid.size());

  // Spot value at r = 50 for the curve that is deepest at short range.
  CHECK(curves.energy[0][30] == doctest::Approx(-1.29502190866e-7).epsilon(1e-9));
  CHECK(curves.energy[8][30] == doctest::Approx(-9.95405587036e-8).epsilon(1e-9));

  // At every radius the labeled energies are a permutation of the
  // eigenvalues: their sum must equal the trace of the combined matrix.
  for (std::size_t ir = 0; ir < grid.size(); ir += 30) {
    const Matrix w = longrange::combined_matrix(c6, c3, grid[ir]);
    double sum = 0.0;
    for (const auto& curve : curves.energy) sum += curve[ir];
    CHECK(sum == doctest::Approx(emap(w).trace()).epsilon(1e-12));
  }

  // Labels start out in ascending energy order.
  for (int c = 1; c < 9; ++c) CHECK(curves.energy[c - 1][0] <= curves.energy[c][0]);

  CHECK_THROWS_AS(longrange::combined_adiabats(c6, c3, {}), std::invalid_argument);
  CHECK_THROWS_AS(longrange::combined_adiabats(c6, c3, {50.0, 40.0}), std::invalid_argument);
}

TEST_CASE("quadrupole-quadrupole scale") {
  const double q = -0.00524;
  CHECK(longrange::qq_interaction_scale(q, 50.0) ==
        doctest::Approx(q * q / std::pow(50.0, 5)).epsilon(1e-15));
  // Tiny against dispersion at the same radius: of order 1e-7 of it.
  const double ratio = longrange::qq_interaction_scale(q, 50.0) / (1878.0 / std::pow(50.0, 6));
  CHECK(ratio == doctest::Approx(7.31e-7).epsilon(1e-2));
  CHECK_THROWS_AS(longrange::qq_interaction_scale(q, 0.0), std::invalid_argument);
}
