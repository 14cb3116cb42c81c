#pragma once

#include <string>
#include <vector>

// Layered run configuration: built-in defaults, overridden by an INI-style
// config file ([section] + key = value lines), overridden by command-line
// flags.  The effective configuration is echoed into every JSON output.

namespace dylr::cli {

struct RunConfig {
  // [atom]
  int j = 8;
  double g_j = 1.24159;
  double isotope_mass_amu = 163.929;    // 164-Dy
  double quadrupole_au = -0.00524;

  // [longrange]
  std::string k_source = "baked";       // "baked" or "linelist"
  std::string linelist_path;
  double delta_c6 = 25.0;               // spread of the C6 adiabats

  // [grid]  (radial grid for adiabats/scales)
  double r_min = 20.0;
  double r_max = 200.0;
  int r_points = 181;

  // [scattering]
  double c6 = 1878.0;                   // isotropic C6
  double r_inner = 35.0;
  double r_outer = 1200.0;
  double grid_step = 0.02;
  int l_max = 4;
  double energy_min_uk = 1.0;
  double energy_max_uk = 1000.0;
  int energy_points = 25;
  int threads = 0;

  // [fields]
  std::vector<double> b_fields_gauss{10.0, 100.0};  // scales curves

  // [output]
  std::string out_dir;                  // flag > config > $DYLR_OUTPUT_DIR > "."
  bool write_csv = true;
  bool write_json = true;

  void validate() const;                // throws std::invalid_argument
};

// Parses the file into `cfg`.  Unknown sections/keys and malformed lines
// throw std::invalid_argument with the line number.
void apply_config_file(RunConfig& cfg, const std::string& path);

// Resolves the output directory from flag/config/environment and creates it.
std::string resolve_out_dir(const RunConfig& cfg);

std::vector<double> parse_double_list(const std::string& csv);

}  // namespace dylr::cli
