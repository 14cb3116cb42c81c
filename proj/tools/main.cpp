#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dylr/export.hpp"
#include "dylr/longrange.hpp"
#include "dylr/scales.hpp"
#include "dylr/scattering.hpp"
#include "dylr/units.hpp"
#include "dylr/version.hpp"
#include "json_writers.hpp"
#include "run_config.hpp"

namespace fs = std::filesystem;
using dylr::cli::RunConfig;
using dylr::io::fmt_sci;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  const double step = (b - a) / (n - 1);
  for (int i = 0; i < n; ++i) v[i] = a + i * step;
  v.back() = b;
  return v;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw std::runtime_error("failed while writing: " + path.string());
}

void apply_format(RunConfig& cfg, const std::string& format) {
  if (format.empty()) return;
  if (format == "csv") {
    cfg.write_csv = true;
    cfg.write_json = false;
  } else if (format == "json") {
    cfg.write_csv = false;
    cfg.write_json = true;
  } else if (format == "both" || format == "csv,json" || format == "json,csv") {
    cfg.write_csv = true;
    cfg.write_json = true;
  } else {
    throw std::invalid_argument("--format must be csv, json or both");
  }
}

dylr::atomdata::KTensor make_k_tensor(const RunConfig& cfg) {
  if (cfg.k_source == "linelist")
    return dylr::atomdata::build_k_tensor(
        dylr::atomdata::load_linelist(cfg.linelist_path, cfg.j), cfg.j);
  if (cfg.j != 8)
    throw std::invalid_argument("the baked dispersion sums are for j = 8; "
                                "supply a linelist for other j");
  return dylr::atomdata::baked_k_tensor();
}

std::vector<dylr::atomdata::TransitionLine> validation_lines(const RunConfig& cfg) {
  if (cfg.k_source == "linelist")
    return dylr::atomdata::load_linelist(cfg.linelist_path, cfg.j);
  return dylr::atomdata::effective_line_model(cfg.j);
}

struct SpectrumStats {
  int count = 0, gerade = 0, ungerade = 0, positive = 0, negative = 0;
  double min = 0.0, max = 0.0, weighted_sum = 0.0;
};

SpectrumStats spectrum_stats(const std::vector<dylr::longrange::AdiabaticSpectrum>& spectra) {
  SpectrumStats st;
  bool first = true;
  for (const auto& s : spectra) {
    const double weight = s.omega > 0 ? 2.0 : 1.0;  // +-omega degeneracy
    for (const double v : s.values) {
      ++st.count;
      (s.parity == dylr::angular::Parity::gerade ? st.gerade : st.ungerade) += 1;
      (v > 0.0 ? st.positive : st.negative) += 1;
      st.weighted_sum += weight * v;
      st.min = first ? v : std::min(st.min, v);
      st.max = first ? v : std::max(st.max, v);
      first = false;
    }
  }
  return st;
}

int run_c6(const RunConfig& cfg, bool validate) {
  const auto k = make_k_tensor(cfg);
  const auto spectra = dylr::longrange::c6_spectra(k);
  const SpectrumStats st = spectrum_stats(spectra);

  const fs::path dir = dylr::cli::resolve_out_dir(cfg);
  if (cfg.write_csv) {
    std::ostringstream csv;
    dylr::io::write_spectra_csv(csv, spectra);
    write_file(dir / "c6_spectrum.csv", csv.str());
  }
  if (cfg.write_json)
    write_file(dir / "c6_spectrum.json", dylr::cli::spectra_json(spectra, cfg, "c6_spectrum"));

  std::cout << "C6 adiabats: " << st.count << " (gerade " << st.gerade << ", ungerade "
            << st.ungerade << ")\n"
            << "  min = " << fmt_sci(st.min) << " a.u., max = " << fmt_sci(st.max)
            << " a.u., spread = " << fmt_sci(st.max - st.min) << " a.u.\n";

  if (validate) {
    const auto report = dylr::longrange::validate_c6_equivalence(validation_lines(cfg), cfg.j);
    std::cout << "  closed-form vs direct-sum deviation: " << fmt_sci(report.max_abs_deviation)
              << " (worst omega " << report.worst_omega << ", tolerance "
              << fmt_sci(report.tolerance) << ")\n";
    if (!report.within_tolerance) {
      std::cerr << "error: C6 assembly disagrees with the direct perturbation sum\n";
      return 1;
    }
  }
  return 0;
}

int run_c3(const RunConfig& cfg, int omega, const std::string& parity_str) {
  std::vector<dylr::longrange::AdiabaticSpectrum> spectra;
  if (omega < 0) {
    spectra = dylr::longrange::c3_spectra(cfg.g_j, cfg.j);
  } else {
    if (omega > 2 * cfg.j) throw std::invalid_argument("--omega exceeds 2j");
    std::vector<dylr::angular::Parity> parities;
    if (parity_str == "g" || parity_str.empty())
      parities.push_back(dylr::angular::Parity::gerade);
    if (parity_str == "u" || parity_str.empty())
      parities.push_back(dylr::angular::Parity::ungerade);
    for (const auto parity : parities) {
      const auto block = dylr::longrange::build_c3_block(omega, parity, cfg.g_j, cfg.j);
      if (block.coefficients.rows() == 0) continue;  // e.g. omega = 2j ungerade
      spectra.push_back(dylr::longrange::adiabatic_coefficients(block));
    }
  }

  const fs::path dir = dylr::cli::resolve_out_dir(cfg);
  if (cfg.write_csv) {
    std::ostringstream csv;
    dylr::io::write_spectra_csv(csv, spectra);
    write_file(dir / "c3_spectrum.csv", csv.str());
  }
  if (cfg.write_json)
    write_file(dir / "c3_spectrum.json", dylr::cli::spectra_json(spectra, cfg, "c3_spectrum"));

  if (spectra.empty()) {
    std::cout << "C3 block is empty for the requested symmetry; wrote header-only table\n";
    return 0;
  }
  const SpectrumStats st = spectrum_stats(spectra);
  std::cout << "C3 adiabats: " << st.count << " (" << st.positive << " attractive, "
            << st.negative << " repulsive)\n"
            << "  min = " << fmt_sci(st.min) << " a.u., max = " << fmt_sci(st.max) << " a.u.\n";
  if (omega < 0)
    std::cout << "  degeneracy-weighted sum over +-omega = " << fmt_sci(st.weighted_sum)
              << " a.u. (exactly zero in exact arithmetic)\n";
  return 0;
}

int run_adiabats(const RunConfig& cfg, int omega, const std::string& parity_str, bool with_mk) {
  const auto parity = dylr::angular::parity_from_symbol(parity_str.at(0));
  const auto k = make_k_tensor(cfg);
  const auto c6 = dylr::longrange::build_c6_block(k, omega, parity);
  const auto c3 = dylr::longrange::build_c3_block(omega, parity, cfg.g_j, cfg.j);

  std::vector<dylr::longrange::PotentialCurves> sets;
  if (c6.coefficients.rows() > 0) {
    const auto grid = linspace(cfg.r_min, cfg.r_max, cfg.r_points);
    sets.push_back(dylr::longrange::combined_adiabats(c6, c3, grid));
  }

  const fs::path dir = dylr::cli::resolve_out_dir(cfg);
  if (cfg.write_csv) {
    std::ostringstream csv;
    dylr::io::write_curves_csv(csv, sets, with_mk);
    write_file(dir / "adiabats.csv", csv.str());
  }
  if (cfg.write_json) write_file(dir / "adiabats.json", dylr::cli::curves_json(sets, cfg));

  if (sets.empty()) {
    std::cout << "adiabat block is empty for the requested symmetry; wrote header-only table\n";
  } else {
    std::cout << "adiabats: omega = " << omega << parity_str << ", " << sets[0].energy.size()
              << " curves over R = [" << fmt_sci(cfg.r_min) << ", " << fmt_sci(cfg.r_max)
              << "] a0 (" << cfg.r_points << " points)\n";
  }
  return 0;
}

int run_scales(const RunConfig& cfg) {
  const double mu = dylr::units::reduced_mass_au(cfg.isotope_mass_amu, cfg.isotope_mass_amu);
  const auto r_grid = linspace(cfg.r_min, cfg.r_max, cfg.r_points);
  const auto grid = dylr::scales::build_scale_grid(r_grid, cfg.b_fields_gauss, cfg.g_j, cfg.j,
                                                   mu, cfg.delta_c6);

  const fs::path dir = dylr::cli::resolve_out_dir(cfg);
  if (cfg.write_csv) {
    std::ostringstream csv;
    dylr::io::write_scales_csv(csv, grid);
    write_file(dir / "scales.csv", csv.str());
  }
  if (cfg.write_json) write_file(dir / "scales.json", dylr::cli::scales_json(grid, cfg));

  // Crossing radii: where the interaction anisotropy stops dominating.
  const double lo = 5.0, hi = 2000.0;
  auto report = [&](const std::string& label, auto f, auto g) {
    try {
      const double r = dylr::scales::crossing_radius(f, g, lo, hi);
      std::cout << "  " << label << " at R = " << fmt_sci(r) << " a0\n";
    } catch (const std::runtime_error&) {
      std::cout << "  " << label << ": no crossing in [" << lo << ", " << hi << "] a0\n";
    }
  };

  std::cout << "scale crossings:\n";
  auto ad = [&](double r) { return dylr::scales::ad_scale(r, cfg.delta_c6); };
  auto mdd = [&](double r) { return dylr::scales::mdd_scale(r, cfg.g_j, cfg.j); };
  for (const double b : cfg.b_fields_gauss) {
    const double zeeman = dylr::scales::zeeman_scale(dylr::units::gauss_to_au(b), cfg.g_j);
    auto flat = [zeeman](double) { return zeeman; };
    std::ostringstream label;
    label << "anisotropy = zeeman(" << b << " G)";
    report(label.str(), ad, flat);
    label.str("");
    label << "dipole-dipole = zeeman(" << b << " G)";
    report(label.str(), mdd, flat);
  }
  report("anisotropy = dipole-dipole", ad, mdd);
  std::cout << "  anisotropy = dipole-dipole (closed form) at R = "
            << fmt_sci(dylr::scales::ad_mdd_crossing(cfg.delta_c6, cfg.g_j, cfg.j)) << " a0\n";

  const double r_ref = 50.0;
  const double qq = dylr::longrange::qq_interaction_scale(cfg.quadrupole_au, r_ref);
  const double disp = cfg.c6 / std::pow(r_ref, 6);
  std::cout << "  quadrupole-quadrupole at " << r_ref << " a0: " << fmt_sci(qq)
            << " Ha (" << fmt_sci(qq / disp) << " of the dispersion scale)\n";
  return 0;
}

int run_rates(const RunConfig& cfg, double b_gauss) {
  const double mu = dylr::units::reduced_mass_au(cfg.isotope_mass_amu, cfg.isotope_mass_amu);
  dylr::scattering::CollisionConfig ccfg;
  ccfg.c6 = cfg.c6;
  ccfg.reduced_mass = mu;
  ccfg.r_inner = cfg.r_inner;
  ccfg.r_outer = cfg.r_outer;
  ccfg.grid_step = cfg.grid_step;
  ccfg.l_max = cfg.l_max;

  const auto energies = dylr::scattering::log_energy_grid(
      dylr::units::microkelvin_to_au(cfg.energy_min_uk),
      dylr::units::microkelvin_to_au(cfg.energy_max_uk), cfg.energy_points);
  const auto table = dylr::scattering::build_rate_table(
      ccfg, energies, dylr::units::gauss_to_au(b_gauss), cfg.g_j, cfg.j, cfg.threads);

  const fs::path dir = dylr::cli::resolve_out_dir(cfg);
  if (cfg.write_csv) {
    std::ostringstream partial, summary;
    dylr::io::write_rates_partial_csv(partial, table);
    write_file(dir / "rates_partial.csv", partial.str());
    dylr::io::write_rates_summary_csv(summary, table);
    write_file(dir / "rates_summary.csv", summary.str());
  }
  if (cfg.write_json) write_file(dir / "rates.json", dylr::cli::rates_json(table, cfg));

  std::cout << "universal inelastic rates: C6 = " << fmt_sci(cfg.c6) << " a.u., Rx = "
            << fmt_sci(dylr::scattering::characteristic_length_rx(cfg.c6, mu))
            << " a0, mean scattering length = "
            << fmt_sci(dylr::scattering::mean_scattering_length(cfg.c6, mu)) << " a0\n";
  for (int l = 1; l <= cfg.l_max; ++l) {
    const auto b = dylr::scattering::barrier(l, cfg.c6, mu);
    std::cout << "  l = " << l << " barrier: R = " << fmt_sci(b.radius) << " a0, height = "
              << fmt_sci(dylr::units::au_to_kelvin(b.height_au) * 1.0e3) << " mK\n";
  }

  // Headline number: total loss rate at the grid point nearest 500 uK.
  const double e_ref = dylr::units::microkelvin_to_au(500.0);
  std::size_t nearest = 0;
  for (std::size_t ie = 1; ie < table.energies.size(); ++ie)
    if (std::abs(table.energies[ie] - e_ref) < std::abs(table.energies[nearest] - e_ref))
      nearest = ie;
  std::cout << "  beta_total(E = " << fmt_sci(dylr::units::au_to_kelvin(table.energies[nearest]))
            << " K) = " << fmt_sci(dylr::units::rate_au_to_cm3s(table.beta_total[nearest]))
            << " cm^3/s\n"
            << "  dipolar relaxation at B = " << fmt_sci(b_gauss) << " G: gamma_total(E above) = "
            << fmt_sci(dylr::units::rate_au_to_cm3s(table.gamma_total[nearest])) << " cm^3/s\n";
  if (table.truncation_warning)
    std::cerr << "warning: l_max = " << cfg.l_max << " contributes "
              << fmt_sci(table.truncation_fraction)
              << " of the total at the highest energy; raise l_max\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;

  // The config file seeds the defaults, so it must be found before CLI11
  // parses the flags that override it.
  std::string config_path;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) config_path = argv[i + 1];
    else if (arg.rfind("--config=", 0) == 0) config_path = arg.substr(9);
  }
  try {
    if (!config_path.empty()) dylr::cli::apply_config_file(cfg, config_path);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  }

  CLI::App app{"dylr: anisotropic long-range interactions and ultracold "
               "collision rates for ground-state Dy pairs"};
  app.set_version_flag("--version", dylr::kVersion);
  app.require_subcommand(1);

  std::string format, config_dummy;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_dummy, "INI config file (applied before flags)");
    sub->add_option("--out-dir", cfg.out_dir, "output directory (default $DYLR_OUTPUT_DIR or .)");
    sub->add_option("--format", format, "output formats: csv, json or both");
  };
  auto add_k_source = [&](CLI::App* sub) {
    sub->add_option_function<std::string>(
        "--linelist",
        [&cfg](const std::string& path) {
          cfg.k_source = "linelist";
          cfg.linelist_path = path;
        },
        "build dispersion sums from this transition list instead of the baked table");
    sub->add_flag_callback("--baked", [&cfg] { cfg.k_source = "baked"; },
                           "use the baked j=8 dispersion sums (default)");
  };

  auto* c6_cmd = app.add_subcommand("c6", "dispersion coefficients of all omega/parity blocks");
  bool c6_validate = false;
  add_common(c6_cmd);
  add_k_source(c6_cmd);
  c6_cmd->add_flag("--validate", c6_validate,
                   "cross-check the closed-form assembly against the direct perturbation sum");

  auto* c3_cmd = app.add_subcommand("c3", "magnetic dipole-dipole coefficients");
  int c3_omega = -1;
  std::string c3_parity;
  add_common(c3_cmd);
  c3_cmd->add_option("--omega", c3_omega, "single omega block (default: all)");
  c3_cmd->add_option("--parity", c3_parity, "restrict to one parity (g or u)")
      ->check(CLI::IsMember({"g", "u"}));
  c3_cmd->add_option("--gj", cfg.g_j, "Lande g-factor");

  auto* ad_cmd = app.add_subcommand("adiabats", "combined -C6/R^6 - C3/R^3 potential curves");
  int ad_omega = 0;
  std::string ad_parity = "g";
  bool ad_mk = false;
  add_common(ad_cmd);
  add_k_source(ad_cmd);
  ad_cmd->add_option("--omega", ad_omega, "omega block (default 0)");
  ad_cmd->add_option("--parity", ad_parity, "parity (default g)")
      ->check(CLI::IsMember({"g", "u"}));
  ad_cmd->add_option("--gj", cfg.g_j, "Lande g-factor");
  ad_cmd->add_option("--rmin", cfg.r_min, "grid start, bohr");
  ad_cmd->add_option("--rmax", cfg.r_max, "grid end, bohr");
  ad_cmd->add_option("--points", cfg.r_points, "grid points");
  ad_cmd->add_flag("--mk", ad_mk, "append a millikelvin column to the CSV");

  auto* sc_cmd = app.add_subcommand("scales", "energy scales vs R and their crossing radii");
  std::string sc_fields;
  add_common(sc_cmd);
  sc_cmd->add_option("--bfield", sc_fields, "comma-separated field values, gauss");
  sc_cmd->add_option("--delta-c6", cfg.delta_c6, "C6 anisotropy (spread), a.u.");
  sc_cmd->add_option("--gj", cfg.g_j, "Lande g-factor");
  sc_cmd->add_option("--mass", cfg.isotope_mass_amu, "isotope mass, amu");
  sc_cmd->add_option("--rmin", cfg.r_min, "grid start, bohr");
  sc_cmd->add_option("--rmax", cfg.r_max, "grid end, bohr");
  sc_cmd->add_option("--points", cfg.r_points, "grid points");

  auto* rt_cmd = app.add_subcommand("rates", "universal loss and dipolar-relaxation rates");
  double rt_bfield = 0.0;
  add_common(rt_cmd);
  rt_cmd->add_option("--bfield", rt_bfield, "magnetic field, gauss")->required();
  rt_cmd->add_option("--c6", cfg.c6, "isotropic C6, a.u.");
  rt_cmd->add_option("--rc", cfg.r_inner, "absorbing boundary radius, bohr");
  rt_cmd->add_option("--rm", cfg.r_outer, "matching radius, bohr");
  rt_cmd->add_option("--step", cfg.grid_step, "radial step, bohr");
  rt_cmd->add_option("--lmax", cfg.l_max, "highest partial wave");
  rt_cmd->add_option("--emin-uk", cfg.energy_min_uk, "lowest energy, microkelvin");
  rt_cmd->add_option("--emax-uk", cfg.energy_max_uk, "highest energy, microkelvin");
  rt_cmd->add_option("--points", cfg.energy_points, "energy grid points");
  rt_cmd->add_option("--mass", cfg.isotope_mass_amu, "isotope mass, amu");
  rt_cmd->add_option("--gj", cfg.g_j, "Lande g-factor");
  rt_cmd->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    apply_format(cfg, format);
    if (sc_cmd->parsed() && !sc_fields.empty())
      cfg.b_fields_gauss = dylr::cli::parse_double_list(sc_fields);
    cfg.validate();

    if (c6_cmd->parsed()) return run_c6(cfg, c6_validate);
    if (c3_cmd->parsed()) return run_c3(cfg, c3_omega, c3_parity);
    if (ad_cmd->parsed()) return run_adiabats(cfg, ad_omega, ad_parity, ad_mk);
    if (sc_cmd->parsed()) return run_scales(cfg);
    if (rt_cmd->parsed()) {
      if (!(rt_bfield > 0.0))
        throw std::invalid_argument("rates: --bfield must be positive (gauss)");
      return run_rates(cfg, rt_bfield);
    }
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}
