#pragma once

#include <functional>
#include <string>
#include <vector>

// Characteristic energy scales of a colliding Dy pair as functions of the
// separation R, used to locate the radii where the hierarchy of couplings
// reorders.  All inputs and outputs in atomic units.

namespace dylr::scales {

// Zeeman splitting between adjacent projection states, g_j mu_B B.
double zeeman_scale(double b_au, double g_j);

// Rotational (centrifugal) splitting l(l+1)/(2 mu R^2) at the reference l = 2.
double rotational_scale(double r, double reduced_mass);

// Magnetic dipole-dipole scale 2 alpha^2 j (g_j/2)^2 / R^3 for stretched
// moments of magnitude j (g_j/2) each.
double mdd_scale(double r, double g_j, int j = 8);

// Anisotropic-dispersion scale dC6 / R^6, with dC6 the spread of the C6
// adiabats.
double ad_scale(double r, double delta_c6);

// Radius where two monotone scale curves cross, by bisection to r_tol.
// Throws std::runtime_error if f - g does not change sign on [r_lo, r_hi].
double crossing_radius(const std::function<double(double)>& f,
                       const std::function<double(double)>& g,
                       double r_lo, double r_hi, double r_tol = 1.0e-3);

// Closed-form radius where the anisotropic-dispersion scale equals the
// dipole-dipole scale: R = (dC6 / (2 alpha^2 j (g_j/2)^2))^(1/3).
double ad_mdd_crossing(double delta_c6, double g_j, int j = 8);

struct ScaleGrid {
  std::vector<double> r_grid;                 // bohr
  std::vector<std::string> names;             // column names
  std::vector<std::vector<double>> columns;   // [col][ir], Hartree
};

// Tabulates all scales over a radial grid.  One zeeman_<B>G column per field
// value, then rotational, mdd and ad.
ScaleGrid build_scale_grid(const std::vector<double>& r_grid,
                           const std::vector<double>& b_fields_gauss,
                           double g_j, int j, double reduced_mass, double delta_c6);

}  // namespace dylr::scales
