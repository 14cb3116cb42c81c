#pragma once

#include <complex>
#include <vector>

// Ultracold collision rates on a single -C6/R^6 channel with full short-range
// absorption (the universal regime), plus first-order dipolar relaxation
// rates.  Atomic units unless a name says otherwise.

namespace dylr::scattering {

struct CollisionConfig {
  double c6 = 1878.0;          // isotropic dispersion coefficient
  double reduced_mass = 0.0;   // electron masses; must be set
  double r_inner = 35.0;       // absorbing boundary radius, bohr
  double r_outer = 1200.0;     // matching radius, bohr
  double grid_step = 0.02;     // radial step, bohr
  int l_max = 4;               // highest partial wave

  void validate() const;       // throws std::invalid_argument
};

// Characteristic dispersion length (2 mu C6)^(1/4) and the mean scattering
// length 0.4779888... * Rx of the -C6/R^6 potential.
double characteristic_length_rx(double c6, double reduced_mass);
double mean_scattering_length(double c6, double reduced_mass);

struct BarrierInfo {
  int l = 0;
  double radius = 0.0;     // bohr
  double height_au = 0.0;  // Hartree
};

// Top of the centrifugal barrier of -C6/R^6 + l(l+1)/(2 mu R^2).
BarrierInfo barrier(int l, double c6, double reduced_mass);

// Single-channel S-matrix element at collision energy E for partial wave l,
// integrating u'' = [l(l+1)/R^2 - 2 mu (E + C6/R^6)] u outward from a purely
// incoming (absorbed) WKB wave at r_inner and matching to free spherical
// waves at r_outer.  Throws std::invalid_argument when the grid cannot
// resolve the local wavelength or the potential is not negligible at r_outer.
std::complex<double> universal_smatrix(const CollisionConfig& cfg, double energy, int l);

// Partial-wave loss rate beta_l = 2 (2l+1) (k/mu) (pi/k^2) (1 - |S|^2) and its
// unitarity ceiling (|S| = 0), both in atomic units.
double partial_rate(const CollisionConfig& cfg, double energy, int l);
double partial_rate_from_s(std::complex<double> s, double energy, int l, double reduced_mass);
double unitarity_limit(double energy, int l, double reduced_mass);

// Anisotropy function of the dipolar-relaxation Born amplitude;
// x = k_f/k_i >= 1.  h -> -1/2 at threshold and -> 1 for x -> infinity.
double h_function(double x);

// Born dipolar-relaxation rates out of the maximally stretched Zeeman state:
// single (gamma_1) and double (gamma_2) spin flip, and the total event rate
// 2 (gamma_1 + gamma_2).  b_au > 0 required: the released Zeeman energy sets
// the outgoing momentum.
double born_gamma1(double b_au, double energy, double reduced_mass, int j, double g_j);
double born_gamma2(double b_au, double energy, double reduced_mass, int j, double g_j);
double total_born_rate(double b_au, double energy, double reduced_mass, int j, double g_j);

struct RateTable {
  std::vector<double> energies;                 // Hartree, ascending
  int l_max = 0;
  std::vector<std::vector<double>> beta_l;      // [l][ie], a.u.
  std::vector<std::vector<double>> unitarity_l; // [l][ie], a.u.
  std::vector<double> beta_total;               // [ie], a.u.
  std::vector<double> gamma1;                   // [ie], a.u.
  std::vector<double> gamma2;                   // [ie], a.u.
  std::vector<double> gamma_total;              // [ie], a.u.
  double b_field_au = 0.0;
  // Share of the highest partial wave in the total at the highest energy;
  // above 1e-3 the l_max truncation is suspect.
  double truncation_fraction = 0.0;
  bool truncation_warning = false;
};

// Full rate table over an energy grid.  Work is distributed over threads
// (0 = hardware concurrency) with results placed by index, so the table is
// identical no matter how many threads run.
RateTable build_rate_table(const CollisionConfig& cfg, const std::vector<double>& energies,
                           double b_field_au, double g_j, int j, int n_threads = 0);

// Logarithmic energy grid, inclusive of both endpoints.
std::vector<double> log_energy_grid(double e_min, double e_max, int n_points);

}  // namespace dylr::scattering
