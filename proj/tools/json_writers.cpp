#include "json_writers.hpp"

#include <algorithm>

#include <json.hpp>

#include "dylr/units.hpp"
#include "dylr/version.hpp"

namespace dylr::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json config_echo(const RunConfig& cfg) {
  ordered_json j;
  j["atom"] = {{"j", cfg.j},
               {"g_j", cfg.g_j},
               {"isotope_mass_amu", cfg.isotope_mass_amu},
               {"quadrupole_au", cfg.quadrupole_au}};
  j["longrange"] = {{"k_source", cfg.k_source},
                    {"linelist_path", cfg.linelist_path},
                    {"delta_c6", cfg.delta_c6}};
  j["grid"] = {{"r_min", cfg.r_min}, {"r_max", cfg.r_max}, {"r_points", cfg.r_points}};
  j["scattering"] = {{"c6", cfg.c6},
                     {"r_inner", cfg.r_inner},
                     {"r_outer", cfg.r_outer},
                     {"grid_step", cfg.grid_step},
                     {"l_max", cfg.l_max},
                     {"energy_min_uk", cfg.energy_min_uk},
                     {"energy_max_uk", cfg.energy_max_uk},
                     {"energy_points", cfg.energy_points}};
  j["fields"] = {{"b_gauss", cfg.b_fields_gauss}};
  return j;
}

ordered_json document(const RunConfig& cfg, const std::string& kind) {
  ordered_json doc;
  doc["version"] = dylr::kVersion;
  doc["kind"] = kind;
  doc["config"] = config_echo(cfg);
  return doc;
}

std::string parity_str(angular::Parity p) { return {angular::parity_symbol(p)}; }

}  // namespace

std::string spectra_json(const std::vector<longrange::AdiabaticSpectrum>& spectra,
                         const RunConfig& cfg, const std::string& kind) {
  ordered_json doc = document(cfg, kind);

  double lo = 0.0, hi = 0.0;
  bool first = true;
  int count = 0;
  ordered_json records = ordered_json::array();
  for (const auto& s : spectra)
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      records.push_back({{"omega", s.omega},
                         {"parity", parity_str(s.parity)},
                         {"adiabat_index", static_cast<int>(i)},
                         {"value_au", s.values[i]}});
      lo = first ? s.values[i] : std::min(lo, s.values[i]);
      hi = first ? s.values[i] : std::max(hi, s.values[i]);
      first = false;
      ++count;
    }
  doc["records"] = std::move(records);
  doc["summary"] = {{"count", count}, {"min_au", lo}, {"max_au", hi}, {"spread_au", hi - lo}};
  return doc.dump(2) + "\n";
}

std::string curves_json(const std::vector<longrange::PotentialCurves>& sets,
                        const RunConfig& cfg) {
  ordered_json doc = document(cfg, "adiabats");
  ordered_json blocks = ordered_json::array();
  for (const auto& set : sets) {
    ordered_json block;
    block["omega"] = set.omega;
    block["parity"] = parity_str(set.parity);
    block["r_a0"] = set.r_grid;
    ordered_json curves = ordered_json::array();
    for (const auto& curve : set.energy) curves.push_back(curve);
    block["energy_au"] = std::move(curves);
    blocks.push_back(std::move(block));
  }
  doc["blocks"] = std::move(blocks);
  return doc.dump(2) + "\n";
}

std::string scales_json(const scales::ScaleGrid& grid, const RunConfig& cfg) {
  ordered_json doc = document(cfg, "scales");
  doc["r_a0"] = grid.r_grid;
  ordered_json columns;
  for (std::size_t c = 0; c < grid.names.size(); ++c) columns[grid.names[c]] = grid.columns[c];
  doc["scales_au"] = std::move(columns);
  return doc.dump(2) + "\n";
}

std::string rates_json(const scattering::RateTable& table, const RunConfig& cfg) {
  ordered_json doc = document(cfg, "rates");
  doc["b_field_gauss"] = units::au_to_gauss(table.b_field_au);

  std::vector<double> energies_k;
  for (const double e : table.energies) energies_k.push_back(units::au_to_kelvin(e));
  doc["energy_K"] = energies_k;

  ordered_json partial = ordered_json::array();
  for (int l = 0; l <= table.l_max; ++l) {
    std::vector<double> beta, cap;
    for (std::size_t ie = 0; ie < table.energies.size(); ++ie) {
      beta.push_back(units::rate_au_to_cm3s(table.beta_l[l][ie]));
      cap.push_back(units::rate_au_to_cm3s(table.unitarity_l[l][ie]));
    }
    partial.push_back({{"l", l}, {"beta_cm3s", beta}, {"unitarity_cm3s", cap}});
  }
  doc["partial"] = std::move(partial);

  auto scaled = [](const std::vector<double>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const double x : v) out.push_back(units::rate_au_to_cm3s(x));
    return out;
  };
  doc["beta_total_cm3s"] = scaled(table.beta_total);
  doc["gamma1_cm3s"] = scaled(table.gamma1);
  doc["gamma2_cm3s"] = scaled(table.gamma2);
  doc["gamma_total_cm3s"] = scaled(table.gamma_total);
  doc["truncation_fraction"] = table.truncation_fraction;
  doc["truncation_warning"] = table.truncation_warning;
  return doc.dump(2) + "\n";
}

}  // namespace dylr::cli
