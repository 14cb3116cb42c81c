#include "dylr/scales.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dylr/units.hpp"

namespace dylr::scales {

namespace {

void check_radius(double r, const char* who) {
  if (!(r > 0.0)) throw std::invalid_argument(std::string(who) + ": separation must be positive");
}

std::string field_column_name(double b_gauss) {
  std::ostringstream name;
  name << "zeeman_" << b_gauss << "G";
  return name.str();
}

}  // namespace

double zeeman_scale(double b_au, double g_j) {
  if (b_au < 0.0) throw std::invalid_argument("zeeman_scale: negative field");
  return g_j * units::constants.bohr_magneton_au * b_au;
}

double rotational_scale(double r, double reduced_mass) {
  check_radius(r, "rotational_scale");
  if (!(reduced_mass > 0.0)) throw std::invalid_argument("rotational_scale: mass must be positive");
  return 6.0 / (2.0 * reduced_mass * r * r);
}

double mdd_scale(double r, double g_j, int j) {
  check_radius(r, "mdd_scale");
  const double alpha = units::constants.fine_structure_alpha;
  const double moment = g_j * units::constants.bohr_magneton_au;
  return 2.0 * alpha * alpha * j * moment * moment / (r * r * r);
}

double ad_scale(double r, double delta_c6) {
  check_radius(r, "ad_scale");
  const double r3 = r * r * r;
  return delta_c6 / (r3 * r3);
}

double crossing_radius(const std::function<double(double)>& f,
                       const std::function<double(double)>& g,
                       double r_lo, double r_hi, double r_tol) {
  if (!(r_lo > 0.0) || !(r_hi > r_lo))
    throw std::invalid_argument("crossing_radius: need 0 < r_lo < r_hi");
  if (!(r_tol > 0.0)) throw std::invalid_argument("crossing_radius: tolerance must be positive");

  auto diff = [&](double r) { return f(r) - g(r); };
  double lo = r_lo, hi = r_hi;
  double d_lo = diff(lo);
  const double d_hi = diff(hi);
  if (d_lo == 0.0) return lo;
  if (d_hi == 0.0) return hi;
  if ((d_lo > 0.0) == (d_hi > 0.0))
    throw std::runtime_error("crossing_radius: scales do not cross in the given interval");

  while (hi - lo > r_tol) {
    const double mid = 0.5 * (lo + hi);
    const double d_mid = diff(mid);
    if (d_mid == 0.0) return mid;
    if ((d_mid > 0.0) == (d_lo > 0.0)) {
      lo = mid;
      d_lo = d_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double ad_mdd_crossing(double delta_c6, double g_j, int j) {
  if (!(delta_c6 > 0.0)) throw std::invalid_argument("ad_mdd_crossing: dC6 must be positive");
  const double alpha = units::constants.fine_structure_alpha;
  const double moment = g_j * units::constants.bohr_magneton_au;
  return std::cbrt(delta_c6 / (2.0 * alpha * alpha * j * moment * moment));
}

ScaleGrid build_scale_grid(const std::vector<double>& r_grid,
                           const std::vector<double>& b_fields_gauss,
                           double g_j, int j, double reduced_mass, double delta_c6) {
  if (r_grid.empty()) throw std::invalid_argument("build_scale_grid: empty radial grid");

  ScaleGrid grid;
  grid.r_grid = r_grid;
  for (const double b : b_fields_gauss) {
    grid.names.push_back(field_column_name(b));
    const double value = zeeman_scale(units::gauss_to_au(b), g_j);
    grid.columns.emplace_back(r_grid.size(), value);  // R-independent
  }

  grid.names.insert(grid.names.end(), {"rotational", "mdd", "ad"});
  std::vector<double> rot, mdd, ad;
  for (const double r : r_grid) {
    rot.push_back(rotational_scale(r, reduced_mass));
    mdd.push_back(mdd_scale(r, g_j, j));
    ad.push_back(ad_scale(r, delta_c6));
  }
  grid.columns.push_back(std::move(rot));
  grid.columns.push_back(std::move(mdd));
  grid.columns.push_back(std::move(ad));
  return grid;
}

}  // namespace dylr::scales
