#pragma once

#include <numbers>

// Atomic (Hartree) units everywhere inside the library; this header is the
// single place where lab units enter or leave.  Every conversion factor is
// derived at compile time from one set of primary constants (2019 SI exact
// values plus CODATA 2018 measured ones), so no factor is written down twice.

namespace dylr::units {

namespace detail {
// 2019 SI redefinition: exact by definition.
inline constexpr double kPlanck_Js = 6.62607015e-34;
inline constexpr double kElementaryCharge_C = 1.602176634e-19;
inline constexpr double kBoltzmann_JperK = 1.380649e-23;
// CODATA 2018 measured values.
inline constexpr double kFineStructure = 7.2973525693e-3;
inline constexpr double kBohrRadius_m = 5.29177210903e-11;
inline constexpr double kHartree_J = 4.3597447222071e-18;
inline constexpr double kAmuPerElectronMass = 1822.888486209;

inline constexpr double kHbar_Js = kPlanck_Js / (2.0 * std::numbers::pi);
}  // namespace detail

struct PhysicalConstants {
  double fine_structure_alpha;    // dimensionless
  double bohr_magneton_au;        // mu_B in atomic units (= 1/2)
  double g_factor_gj;             // Lande g of the Dy ground level
  double boltzmann_kB;            // Hartree per Kelvin
  double amu_in_electron_masses;  // electron masses per unified amu
  double gauss_per_au_field;      // gauss per atomic unit of magnetic field
  double bohr_radius_cm;          // cm per bohr
  double hartree_time_s;          // seconds per atomic time unit
  double kelvin_per_hartree;      // K per Hartree
};

inline constexpr PhysicalConstants constants{
    detail::kFineStructure,
    0.5,
    1.24159,
    detail::kBoltzmann_JperK / detail::kHartree_J,
    detail::kAmuPerElectronMass,
    // B_au = hbar / (e a0^2);  1 T = 1e4 G
    detail::kHbar_Js /
        (detail::kElementaryCharge_C * detail::kBohrRadius_m * detail::kBohrRadius_m) * 1.0e4,
    detail::kBohrRadius_m * 1.0e2,
    detail::kHbar_Js / detail::kHartree_J,
    detail::kHartree_J / detail::kBoltzmann_JperK,
};

inline constexpr double kelvin_to_au(double t_kelvin) { return t_kelvin * constants.boltzmann_kB; }
inline constexpr double au_to_kelvin(double e_au) { return e_au * constants.kelvin_per_hartree; }
inline constexpr double microkelvin_to_au(double t_uk) { return kelvin_to_au(t_uk * 1.0e-6); }

inline constexpr double gauss_to_au(double b_gauss) { return b_gauss / constants.gauss_per_au_field; }
inline constexpr double au_to_gauss(double b_au) { return b_au * constants.gauss_per_au_field; }

inline constexpr double amu_to_au(double mass_amu) {
  return mass_amu * constants.amu_in_electron_masses;
}

// Reduced mass of a two-atom system, electron masses.
inline constexpr double reduced_mass_au(double mass_a_amu, double mass_b_amu) {
  const double ma = amu_to_au(mass_a_amu);
  const double mb = amu_to_au(mass_b_amu);
  return ma * mb / (ma + mb);
}

// Two-body rate coefficient: a0^3 per atomic time unit -> cm^3/s.
inline constexpr double rate_unit_cm3s() {
  const double a0 = constants.bohr_radius_cm;
  return a0 * a0 * a0 / constants.hartree_time_s;
}
inline constexpr double rate_au_to_cm3s(double k_au) { return k_au * rate_unit_cm3s(); }

}  // namespace dylr::units
