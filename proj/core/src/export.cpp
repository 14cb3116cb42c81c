#include "dylr/export.hpp"

#include <cstdio>
#include <ostream>

#include "dylr/units.hpp"

namespace dylr::io {

std::string fmt_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.8e", v);
  return buf;
}

void write_spectra_csv(std::ostream& os,
                       const std::vector<longrange::AdiabaticSpectrum>& spectra) {
  os << "omega,parity,adiabat_index,value_au\n";
  for (const auto& s : spectra)
    for (std::size_t i = 0; i < s.values.size(); ++i)
      os << s.omega << ',' << angular::parity_symbol(s.parity) << ',' << i << ','
         << fmt_sci(s.values[i]) << '\n';
}

void write_curves_csv(std::ostream& os, const std::vector<longrange::PotentialCurves>& sets,
                      bool with_millikelvin) {
  os << "omega,parity,adiabat_index,R_a0,value_au";
  if (with_millikelvin) os << ",value_mK";
  os << '\n';
  for (const auto& set : sets)
    for (std::size_t c = 0; c < set.energy.size(); ++c)
      for (std::size_t ir = 0; ir < set.r_grid.size(); ++ir) {
        os << set.omega << ',' << angular::parity_symbol(set.parity) << ',' << c << ','
           << fmt_sci(set.r_grid[ir]) << ',' << fmt_sci(set.energy[c][ir]);
        if (with_millikelvin)
          os << ',' << fmt_sci(units::au_to_kelvin(set.energy[c][ir]) * 1.0e3);
        os << '\n';
      }
}

void write_scales_csv(std::ostream& os, const scales::ScaleGrid& grid) {
  os << "R_a0";
  for (const auto& name : grid.names) os << ',' << name;
  os << '\n';
  for (std::size_t ir = 0; ir < grid.r_grid.size(); ++ir) {
    os << fmt_sci(grid.r_grid[ir]);
    for (const auto& column : grid.columns) os << ',' << fmt_sci(column[ir]);
    os << '\n';
  }
}

void write_rates_partial_csv(std::ostream& os, const scattering::RateTable& table) {
  os << "energy_K,l,beta_l_cm3s,unitarity_cm3s\n";
  for (std::size_t ie = 0; ie < table.energies.size(); ++ie)
    for (int l = 0; l <= table.l_max; ++l)
      os << fmt_sci(units::au_to_kelvin(table.energies[ie])) << ',' << l << ','
         << fmt_sci(units::rate_au_to_cm3s(table.beta_l[l][ie])) << ','
         << fmt_sci(units::rate_au_to_cm3s(table.unitarity_l[l][ie])) << '\n';
}

void write_rates_summary_csv(std::ostream& os, const scattering::RateTable& table) {
  os << "energy_K,beta_total_cm3s,gamma1_cm3s,gamma2_cm3s,gamma_total_cm3s\n";
  for (std::size_t ie = 0; ie < table.energies.size(); ++ie)
    os << fmt_sci(units::au_to_kelvin(table.energies[ie])) << ','
       << fmt_sci(units::rate_au_to_cm3s(table.beta_total[ie])) << ','
       << fmt_sci(units::rate_au_to_cm3s(table.gamma1[ie])) << ','
       << fmt_sci(units::rate_au_to_cm3s(table.gamma2[ie])) << ','
       << fmt_sci(units::rate_au_to_cm3s(table.gamma_total[ie])) << '\n';
}

}  // namespace dylr::io
