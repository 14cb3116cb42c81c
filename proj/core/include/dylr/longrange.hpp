#pragma once

#include <vector>

#include "dylr/angular.hpp"
#include "dylr/atomdata.hpp"
#include "dylr/matrix.hpp"

// Anisotropic long-range interaction between two ground-state atoms held at
// fixed separation R along the quantization axis:
//
//   U(R) = -C6/R^6 (dispersion)  - C3/R^3 (magnetic dipole-dipole),
//
// with C6 and C3 matrices over the pair states of fixed total projection
// omega = m1 + m2.  Positive adiabatic coefficients mean attraction.

namespace dylr::longrange {

using angular::Parity;

// Angular weight of the second-order dipole-dipole sum routed through excited
// channels (ja, jb): four dipole couplings with the intermediate projections
// summed subject to conservation of omega.  Zero unless m1+m2 == m1p+m2p.
// The factors of 2 on q = 0 couplings reproduce the -2 d1z d2z part of the
// dipole-dipole operator relative to the q = +-1 parts.
double a_tensor(int m1, int m2, int m1p, int m2p, int ja, int jb, int j = 8);

// C6 matrix over pair_basis(j, omega):  sum_{ja,jb} K(ja,jb) A(...; ja,jb).
Matrix c6_pair_matrix(const atomdata::KTensor& k, int omega);

// Same matrix assembled the slow, literal way: second-order perturbation sum
// over every discrete intermediate pair excitation of the given line list.
// Serves as the independent reference for c6_pair_matrix.
Matrix c6_pair_matrix_direct(const std::vector<atomdata::TransitionLine>& lines,
                             int omega, int j_ground = 8);

struct EquivalenceReport {
  double max_abs_deviation = 0.0;  // relative to the largest matrix entry
  int worst_omega = 0;
  double tolerance = 0.0;
  bool within_tolerance = false;
};

// Compares the closed-form C6 assembly against the direct perturbation sum
// for every omega block of the given line list.
EquivalenceReport validate_c6_equivalence(const std::vector<atomdata::TransitionLine>& lines,
                                          int j_ground = 8, double tolerance = 1.0e-10);

struct OmegaBlock {
  int omega = 0;
  Parity parity = Parity::gerade;
  int power = 6;  // U contribution is -coefficients / R^power
  angular::SymmetrizedBasis basis;
  Matrix coefficients;  // symmetric, in the symmetrized coupled basis
};

OmegaBlock build_c6_block(const atomdata::KTensor& k, int omega, Parity parity);

// Magnetic dipole-dipole coefficient matrix: C3 operator
// -alpha^2 (g_j mu_B)^2 (j1.j2 - 3 j1z j2z) projected on one omega block.
OmegaBlock build_c3_block(int omega, Parity parity, double g_j, int j = 8);

struct AdiabaticSpectrum {
  int omega = 0;
  Parity parity = Parity::gerade;
  int power = 6;
  std::vector<double> values;  // ascending
  Matrix vectors;              // column i belongs to values[i]
};

// Eigendecomposition of one block.  Throws std::domain_error on empty blocks.
AdiabaticSpectrum adiabatic_coefficients(const OmegaBlock& block);

// All non-empty blocks, omega = 0..2j, gerade before ungerade per omega.
std::vector<AdiabaticSpectrum> c6_spectra(const atomdata::KTensor& k);
std::vector<AdiabaticSpectrum> c3_spectra(double g_j, int j = 8);

// -C6/R^6 - C3/R^3 at separation r, both blocks over the same basis.
Matrix combined_matrix(const OmegaBlock& c6, const OmegaBlock& c3, double r);

struct PotentialCurves {
  int omega = 0;
  Parity parity = Parity::gerade;
  std::vector<double> r_grid;                    // bohr, ascending
  std::vector<std::vector<double>> energy;       // [curve][ir], Hartree
};

// Adiabatic potential curves of the combined interaction.  Curves are labeled
// by their energy order at the first (smallest) grid point and followed
// across the grid by maximum eigenvector overlap, so genuine crossings do not
// scramble the labels.
PotentialCurves combined_adiabats(const OmegaBlock& c6, const OmegaBlock& c3,
                                  const std::vector<double>& r_grid);

// Magnitude of the quadrupole-quadrupole energy scale Q^2 / R^5 for a
// point-quadrupole moment q_au (the angular factor is of order one).
double qq_interaction_scale(double q_au, double r);

}  // namespace dylr::longrange
