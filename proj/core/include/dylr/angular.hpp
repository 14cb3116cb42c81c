#pragma once

#include <string>
#include <vector>

#include "dylr/matrix.hpp"

// Exact angular-momentum algebra.  Wigner 3-j and Clebsch-Gordan coefficients
// are evaluated in integer arithmetic and reported as sign * sqrt(rational),
// so coupling coefficients carry no rounding error beyond the final double.
//
// Angular momenta are passed doubled (two_j = 2j) so half-integer values stay
// exact; *_i helpers cover the common all-integer case.

namespace dylr::angular {

enum class Parity { gerade, ungerade };

inline char parity_symbol(Parity p) { return p == Parity::gerade ? 'g' : 'u'; }
Parity parity_from_symbol(char c);

// sign * sqrt(radicand_num / radicand_den), radicand in lowest terms.
// sign == 0 encodes an exact zero (radicand 0/1).
struct SqrtRational {
  int sign = 0;
  std::string radicand_num = "0";
  std::string radicand_den = "1";
  double value = 0.0;

  bool is_zero() const { return sign == 0; }
};

// Selection-rule violations (projection sum, triangle rule, integer-coupling
// parity) yield an exact zero.  Unphysical labels (negative j, |m| > j, or m
// not matching the integer/half-integer class of j) throw std::domain_error.
SqrtRational wigner3j_exact(int two_j1, int two_j2, int two_j3,
                            int two_m1, int two_m2, int two_m3);
double wigner3j(int two_j1, int two_j2, int two_j3,
                int two_m1, int two_m2, int two_m3);

// <j1 m1, j2 m2 | J M>
SqrtRational clebsch_gordan_exact(int two_j1, int two_m1, int two_j2, int two_m2,
                                  int two_J, int two_M);
double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2,
                      int two_J, int two_M);

// Integer-argument conveniences.
double wigner3j_i(int j1, int j2, int j3, int m1, int m2, int m3);
double clebsch_gordan_i(int j1, int m1, int j2, int m2, int J, int M);

// Product state |j m1>|j m2| of two identical atoms; m1 + m2 is conserved by
// all interactions considered here.
struct PairState {
  int m1;
  int m2;
};

struct CoupledState {
  int J;
  int omega;
  Parity parity;
};

// All |j m1>|j m2> with m1 + m2 = omega, enumerated with m1 descending.
std::vector<PairState> pair_basis(int j, int omega);

struct SymmetrizedBasis {
  int j = 0;
  int omega = 0;
  Parity parity = Parity::gerade;
  std::vector<CoupledState> states;      // rows of `transform`
  std::vector<PairState> pair_states;    // columns of `transform`
  Matrix transform;                      // <j m1, j m2 | J omega>
};

// Exchange-symmetrized coupled basis for two identical integer-j atoms.  The
// coupled states |(jj) J omega> have exchange symmetry (-1)^J, so gerade
// selects even J and ungerade odd J.  May be empty (e.g. omega = 2j ungerade).
SymmetrizedBasis symmetrized_basis(int omega, Parity parity, int j = 8);

// Number of coupled states of one parity summed over omega = 0..2j.
int state_count(Parity parity, int j = 8);

}  // namespace dylr::angular
