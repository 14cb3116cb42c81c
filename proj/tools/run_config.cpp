#include "run_config.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dylr::cli {

namespace {

[[noreturn]] void fail(const std::string& path, int line_no, const std::string& what) {
  throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": " + what);
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& s, const std::string& path, int line_no) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    fail(path, line_no, "not a number: `" + s + "`");
  }
  if (used != s.size()) fail(path, line_no, "trailing characters in number: `" + s + "`");
  return v;
}

int to_int(const std::string& s, const std::string& path, int line_no) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    fail(path, line_no, "not an integer: `" + s + "`");
  }
  if (used != s.size()) fail(path, line_no, "trailing characters in integer: `" + s + "`");
  return v;
}

bool to_bool(const std::string& s, const std::string& path, int line_no) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  fail(path, line_no, "not a boolean: `" + s + "`");
}

}  // namespace

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) throw std::invalid_argument("empty entry in list: `" + csv + "`");
    std::size_t used = 0;
    out.push_back(std::stod(item, &used));
    if (used != item.size())
      throw std::invalid_argument("bad number in list: `" + item + "`");
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);

  std::string section, raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(path, line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "atom" && section != "longrange" && section != "grid" &&
          section != "scattering" && section != "fields" && section != "output")
        fail(path, line_no, "unknown section [" + section + "]");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(path, line_no, "expected `key = value`");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) fail(path, line_no, "expected `key = value`");

    const std::string scoped = section.empty() ? key : section + "." + key;
    if (scoped == "atom.j") cfg.j = to_int(value, path, line_no);
    else if (scoped == "atom.g_j") cfg.g_j = to_double(value, path, line_no);
    else if (scoped == "atom.isotope_mass_amu") cfg.isotope_mass_amu = to_double(value, path, line_no);
    else if (scoped == "atom.quadrupole_au") cfg.quadrupole_au = to_double(value, path, line_no);
    else if (scoped == "longrange.k_source") {
      // accepted forms: `baked`, `baked_table1`, `linelist <path>`
      std::istringstream v(value);
      std::string kind;
      v >> kind;
      if (kind == "baked" || kind == "baked_table1") {
        cfg.k_source = "baked";
      } else if (kind == "linelist") {
        cfg.k_source = "linelist";
        std::string rest;
        std::getline(v, rest);
        rest = trim(rest);
        if (!rest.empty()) cfg.linelist_path = rest;
      } else {
        fail(path, line_no, "k_source must be `baked` or `linelist [path]`");
      }
    }
    else if (scoped == "longrange.linelist_path") cfg.linelist_path = value;
    else if (scoped == "longrange.delta_c6") cfg.delta_c6 = to_double(value, path, line_no);
    else if (scoped == "grid.r_min") cfg.r_min = to_double(value, path, line_no);
    else if (scoped == "grid.r_max") cfg.r_max = to_double(value, path, line_no);
    else if (scoped == "grid.r_points") cfg.r_points = to_int(value, path, line_no);
    else if (scoped == "scattering.c6") cfg.c6 = to_double(value, path, line_no);
    else if (scoped == "scattering.r_inner") cfg.r_inner = to_double(value, path, line_no);
    else if (scoped == "scattering.r_outer") cfg.r_outer = to_double(value, path, line_no);
    else if (scoped == "scattering.grid_step") cfg.grid_step = to_double(value, path, line_no);
    else if (scoped == "scattering.l_max") cfg.l_max = to_int(value, path, line_no);
    else if (scoped == "scattering.energy_min_uk") cfg.energy_min_uk = to_double(value, path, line_no);
    else if (scoped == "scattering.energy_max_uk") cfg.energy_max_uk = to_double(value, path, line_no);
    else if (scoped == "scattering.energy_points") cfg.energy_points = to_int(value, path, line_no);
    else if (scoped == "scattering.threads") cfg.threads = to_int(value, path, line_no);
    else if (scoped == "fields.b_gauss") {
      try {
        cfg.b_fields_gauss = parse_double_list(value);
      } catch (const std::exception& ex) {
        fail(path, line_no, ex.what());
      }
    }
    else if (scoped == "output.directory") cfg.out_dir = value;
    else if (scoped == "output.csv") cfg.write_csv = to_bool(value, path, line_no);
    else if (scoped == "output.json") cfg.write_json = to_bool(value, path, line_no);
    else fail(path, line_no, "unknown key `" + scoped + "`");
  }
}

void RunConfig::validate() const {
  auto bad = [](const std::string& what) { throw std::invalid_argument("config: " + what); };
  if (j < 1) bad("atom j must be >= 1");
  if (!(g_j > 0.0)) bad("g_j must be positive");
  if (!(isotope_mass_amu > 0.0)) bad("isotope mass must be positive");
  if (k_source != "baked" && k_source != "linelist") bad("k_source must be baked or linelist");
  if (k_source == "linelist" && linelist_path.empty()) bad("k_source = linelist needs a path");
  if (!(delta_c6 > 0.0)) bad("delta_c6 must be positive");
  if (!(r_min > 0.0) || !(r_max > r_min)) bad("need 0 < r_min < r_max");
  if (r_points < 2) bad("r_points must be >= 2");
  if (!(c6 > 0.0)) bad("c6 must be positive");
  if (!(r_inner > 0.0) || !(r_outer > r_inner)) bad("need 0 < r_inner < r_outer");
  if (!(grid_step > 0.0)) bad("grid_step must be positive");
  if (l_max < 0) bad("l_max must be >= 0");
  if (!(energy_min_uk > 0.0) || !(energy_max_uk > energy_min_uk))
    bad("need 0 < energy_min_uk < energy_max_uk");
  if (energy_points < 2) bad("energy_points must be >= 2");
  if (threads < 0) bad("threads must be >= 0");
  for (const double b : b_fields_gauss)
    if (!(b > 0.0)) bad("field values must be positive");
  if (!write_csv && !write_json) bad("at least one output format must be enabled");
}

std::string resolve_out_dir(const RunConfig& cfg) {
  std::string dir = cfg.out_dir;
  if (dir.empty())
    if (const char* env = std::getenv("DYLR_OUTPUT_DIR")) dir = env;
  if (dir.empty()) dir = ".";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace dylr::cli
