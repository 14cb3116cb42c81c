#include "dylr/angular.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>

namespace dylr::angular {

namespace {

// Largest factorial the Racah sum can ask for is (j1+j2+j3+1)!; capping the
// table at 128 supports j1+j2+j3 <= 127, far beyond anything needed here.
constexpr int kMaxFactorial = 128;

const mpz_class& factorial(int n) {
  static std::array<mpz_class, kMaxFactorial + 1> table;
  static std::once_flag once;
  std::call_once(once, [] {
    table[0] = 1;
    for (int i = 1; i <= kMaxFactorial; ++i) table[i] = table[i - 1] * i;
  });
  return table[n];
}

void check_state_label(int two_j, int two_m) {
  if (two_j < 0) throw std::domain_error("wigner3j: negative angular momentum");
  if (std::abs(two_m) > two_j) throw std::domain_error("wigner3j: |m| exceeds j");
  if ((two_j + two_m) % 2 != 0)
    throw std::domain_error("wigner3j: m not in the integer/half-integer class of j");
}

bool odd(int n) { return n % 2 != 0; }

// Internal exact value: sign and the rational whose square root is |result|.
struct ExactValue {
  int sign = 0;
  mpq_class radicand{0};
};

SqrtRational to_public(const ExactValue& v) {
  SqrtRational out;
  out.sign = v.sign;
  if (v.sign == 0) return out;
  out.radicand_num = v.radicand.get_num().get_str();
  out.radicand_den = v.radicand.get_den().get_str();
  out.value = v.sign * std::sqrt(v.radicand.get_d());
  return out;
}

ExactValue wigner3j_impl(int two_j1, int two_j2, int two_j3,
                         int two_m1, int two_m2, int two_m3) {
  check_state_label(two_j1, two_m1);
  check_state_label(two_j2, two_m2);
  check_state_label(two_j3, two_m3);

  if (two_m1 + two_m2 + two_m3 != 0) return {};
  if (two_j3 > two_j1 + two_j2 || two_j3 < std::abs(two_j1 - two_j2)) return {};
  // j1 + j2 + j3 must be an integer for the three to couple.
  if (odd(two_j1 + two_j2 + two_j3)) return {};

  const int jsum = (two_j1 + two_j2 + two_j3) / 2;
  if (jsum + 1 > kMaxFactorial)
    throw std::domain_error("wigner3j: angular momenta too large for the exact table");

  const int a1 = (two_j1 + two_j2 - two_j3) / 2;
  const int a2 = (two_j1 - two_j2 + two_j3) / 2;
  const int a3 = (-two_j1 + two_j2 + two_j3) / 2;
  const int j1p = (two_j1 + two_m1) / 2, j1m = (two_j1 - two_m1) / 2;
  const int j2p = (two_j2 + two_m2) / 2, j2m = (two_j2 - two_m2) / 2;
  const int j3p = (two_j3 + two_m3) / 2, j3m = (two_j3 - two_m3) / 2;
  const int c1 = (two_j3 - two_j2 + two_m1) / 2;  // appears as c1 + k
  const int c2 = (two_j3 - two_j1 - two_m2) / 2;  // appears as c2 + k

  const int kmin = std::max({0, -c1, -c2});
  const int kmax = std::min({a1, j1m, j2p});
  if (kmin > kmax) return {};

  mpq_class series(0);
  for (int k = kmin; k <= kmax; ++k) {
    mpz_class den = factorial(k) * factorial(a1 - k) * factorial(j1m - k) *
                    factorial(j2p - k) * factorial(c1 + k) * factorial(c2 + k);
    // numerator +-1 over a positive integer: already canonical.
    series += mpq_class(mpz_class(odd(k) ? -1 : 1), den);
  }
  if (series == 0) return {};

  mpq_class delta(factorial(a1) * factorial(a2) * factorial(a3), factorial(jsum + 1));
  delta.canonicalize();
  const mpz_class proj = factorial(j1p) * factorial(j1m) * factorial(j2p) *
                         factorial(j2m) * factorial(j3p) * factorial(j3m);

  ExactValue out;
  out.radicand = series * series * delta * mpq_class(proj);
  out.sign = sgn(series);
  const int phase = (two_j1 - two_j2 - two_m3) / 2;
  if (odd(std::abs(phase))) out.sign = -out.sign;
  return out;
}

ExactValue clebsch_gordan_impl(int two_j1, int two_m1, int two_j2, int two_m2,
                               int two_J, int two_M) {
  ExactValue v = wigner3j_impl(two_j1, two_j2, two_J, two_m1, two_m2, -two_M);
  if (v.sign == 0) return v;
  v.radicand *= two_J + 1;  // (2J+1) factor of the CG normalization
  const int phase = (two_j1 - two_j2 + two_M) / 2;
  if (odd(std::abs(phase))) v.sign = -v.sign;
  return v;
}

}  // namespace

Parity parity_from_symbol(char c) {
  if (c == 'g') return Parity::gerade;
  if (c == 'u') return Parity::ungerade;
  throw std::invalid_argument("parity symbol must be 'g' or 'u'");
}

SqrtRational wigner3j_exact(int two_j1, int two_j2, int two_j3,
                            int two_m1, int two_m2, int two_m3) {
  return to_public(wigner3j_impl(two_j1, two_j2, two_j3, two_m1, two_m2, two_m3));
}

double wigner3j(int two_j1, int two_j2, int two_j3,
                int two_m1, int two_m2, int two_m3) {
  const ExactValue v = wigner3j_impl(two_j1, two_j2, two_j3, two_m1, two_m2, two_m3);
  return v.sign == 0 ? 0.0 : v.sign * std::sqrt(v.radicand.get_d());
}

SqrtRational clebsch_gordan_exact(int two_j1, int two_m1, int two_j2, int two_m2,
                                  int two_J, int two_M) {
  return to_public(clebsch_gordan_impl(two_j1, two_m1, two_j2, two_m2, two_J, two_M));
}

double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2,
                      int two_J, int two_M) {
  const ExactValue v = clebsch_gordan_impl(two_j1, two_m1, two_j2, two_m2, two_J, two_M);
  return v.sign == 0 ? 0.0 : v.sign * std::sqrt(v.radicand.get_d());
}

double wigner3j_i(int j1, int j2, int j3, int m1, int m2, int m3) {
  return wigner3j(2 * j1, 2 * j2, 2 * j3, 2 * m1, 2 * m2, 2 * m3);
}

double clebsch_gordan_i(int j1, int m1, int j2, int m2, int J, int M) {
  return clebsch_gordan(2 * j1, 2 * m1, 2 * j2, 2 * m2, 2 * J, 2 * M);
}

std::vector<PairState> pair_basis(int j, int omega) {
  if (j < 0) throw std::domain_error("pair_basis: negative j");
  if (std::abs(omega) > 2 * j) throw std::domain_error("pair_basis: |omega| exceeds 2j");
  std::vector<PairState> out;
  for (int m1 = std::min(j, omega + j); m1 >= std::max(-j, omega - j); --m1)
    out.push_back({m1, omega - m1});
  return out;
}

SymmetrizedBasis symmetrized_basis(int omega, Parity parity, int j) {
  if (j < 0) throw std::domain_error("symmetrized_basis: negative j");
  if (std::abs(omega) > 2 * j)
    throw std::domain_error("symmetrized_basis: |omega| exceeds 2j");

  SymmetrizedBasis basis;
  basis.j = j;
  basis.omega = omega;
  basis.parity = parity;
  basis.pair_states = pair_basis(j, omega);

  const bool want_even = (parity == Parity::gerade);
  for (int J = std::abs(omega); J <= 2 * j; ++J)
    if ((J % 2 == 0) == want_even) basis.states.push_back({J, omega, parity});

  const int rows = static_cast<int>(basis.states.size());
  const int cols = static_cast<int>(basis.pair_states.size());
  basis.transform = Matrix(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      basis.transform(r, c) = clebsch_gordan_i(j, basis.pair_states[c].m1,
                                               j, basis.pair_states[c].m2,
                                               basis.states[r].J, omega);
  return basis;
}

int state_count(Parity parity, int j) {
  int n = 0;
  for (int omega = 0; omega <= 2 * j; ++omega)
    n += static_cast<int>(symmetrized_basis(omega, parity, j).states.size());
  return n;
}

}  // namespace dylr::angular
