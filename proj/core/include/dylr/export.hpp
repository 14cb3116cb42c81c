#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dylr/longrange.hpp"
#include "dylr/scales.hpp"
#include "dylr/scattering.hpp"

// CSV writers for every table the toolchain emits.  All floating-point fields
// go through fmt_sci so identical inputs always serialize to identical bytes.

namespace dylr::io {

// Scientific notation with 9 significant digits ("%.8e").
std::string fmt_sci(double v);

// omega,parity,adiabat_index,value_au
void write_spectra_csv(std::ostream& os,
                       const std::vector<longrange::AdiabaticSpectrum>& spectra);

// omega,parity,adiabat_index,R_a0,value_au[,value_mK]
void write_curves_csv(std::ostream& os, const std::vector<longrange::PotentialCurves>& sets,
                      bool with_millikelvin = false);

// R_a0,<scale columns...>
void write_scales_csv(std::ostream& os, const scales::ScaleGrid& grid);

// energy_K,l,beta_l_cm3s,unitarity_cm3s
void write_rates_partial_csv(std::ostream& os, const scattering::RateTable& table);

// energy_K,beta_total_cm3s,gamma1_cm3s,gamma2_cm3s,gamma_total_cm3s
void write_rates_summary_csv(std::ostream& os, const scattering::RateTable& table);

}  // namespace dylr::io
