#include "dylr/scattering.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dylr/units.hpp"

namespace dylr::scattering {

namespace {

using std::numbers::pi;
using Complex = std::complex<double>;

// Fractional part of the mean scattering length a = [4pi/Gamma(1/4)^2] Rx.
constexpr double kMeanLengthOverRx = 0.477988880185119;

double riccati_j(int l, double x) {
  return x * (l == -1 ? std::cos(x) / x : std::sph_bessel(static_cast<unsigned>(l), x));
}

double riccati_n(int l, double x) {
  return -x * (l == -1 ? std::sin(x) / x : std::sph_neumann(static_cast<unsigned>(l), x));
}

struct FreeWaves {
  Complex h_minus, h_plus;    // incoming/outgoing Riccati-Hankel at r
  Complex dh_minus, dh_plus;  // d/dr
};

FreeWaves free_waves(int l, double k, double r) {
  const double x = k * r;
  const double s = riccati_j(l, x);
  const double c = riccati_n(l, x);
  // (x f_l)' = x f_{l-1} - l f_l for both spherical kinds.
  const double ds = k * (riccati_j(l - 1, x) - l * (s / x));
  const double dc = k * (riccati_n(l - 1, x) - l * (c / x));
  FreeWaves w;
  w.h_minus = Complex(c, -s);
  w.h_plus = Complex(c, s);
  w.dh_minus = Complex(dc, -ds);
  w.dh_plus = Complex(dc, ds);
  return w;
}

[[noreturn]] void fail_config(const std::string& what) { throw std::invalid_argument(what); }

}  // namespace

void CollisionConfig::validate() const {
  if (!(c6 > 0.0)) fail_config("collision config: c6 must be positive");
  if (!(reduced_mass > 0.0)) fail_config("collision config: reduced mass must be set");
  if (!(r_inner > 0.0)) fail_config("collision config: inner radius must be positive");
  if (!(r_outer > r_inner)) fail_config("collision config: outer radius must exceed inner");
  if (!(grid_step > 0.0)) fail_config("collision config: grid step must be positive");
  if (l_max < 0) fail_config("collision config: l_max must be >= 0");
}

double characteristic_length_rx(double c6, double reduced_mass) {
  if (!(c6 > 0.0) || !(reduced_mass > 0.0))
    throw std::invalid_argument("characteristic_length_rx: c6 and mass must be positive");
  return std::pow(2.0 * reduced_mass * c6, 0.25);
}

double mean_scattering_length(double c6, double reduced_mass) {
  return kMeanLengthOverRx * characteristic_length_rx(c6, reduced_mass);
}

BarrierInfo barrier(int l, double c6, double reduced_mass) {
  if (l < 1) throw std::invalid_argument("barrier: need l >= 1 for a centrifugal barrier");
  if (!(c6 > 0.0) || !(reduced_mass > 0.0))
    throw std::invalid_argument("barrier: c6 and mass must be positive");
  const double lterm = static_cast<double>(l) * (l + 1);
  // d/dR [l(l+1)/(2 mu R^2) - C6/R^6] = 0  =>  R^4 = 6 mu C6 / (l(l+1)/... )
  const double r4 = 6.0 * reduced_mass * c6 / lterm;
  BarrierInfo info;
  info.l = l;
  info.radius = std::pow(r4, 0.25);
  const double r2 = info.radius * info.radius;
  info.height_au = lterm / (2.0 * reduced_mass * r2) * (2.0 / 3.0);
  return info;
}

std::complex<double> universal_smatrix(const CollisionConfig& cfg, double energy, int l) {
  cfg.validate();
  if (!(energy > 0.0)) throw std::invalid_argument("universal_smatrix: energy must be positive");
  if (l < 0) throw std::invalid_argument("universal_smatrix: l must be >= 0");

  const double mu = cfg.reduced_mass;
  const double c6 = cfg.c6;
  const double h = cfg.grid_step;
  const double lterm = static_cast<double>(l) * (l + 1);
  const double k = std::sqrt(2.0 * mu * energy);

  // The propagation grid must resolve the fastest local oscillation, at the
  // inner edge where the well is deepest.
  const double k_inner = std::sqrt(2.0 * mu * (energy + c6 / std::pow(cfg.r_inner, 6)));
  const double min_wavelength = 2.0 * pi / k_inner;
  if (h > min_wavelength / 20.0) {
    std::ostringstream msg;
    msg << "universal_smatrix: grid step " << h << " bohr cannot resolve the local "
        << "wavelength at the inner edge (need <= " << min_wavelength / 20.0 << ")";
    fail_config(msg.str());
  }
  // Free-wave matching is meaningful only where the potential is negligible.
  const double tail = c6 / std::pow(cfg.r_outer, 6);
  if (tail > 1.0e-3 * energy) {
    std::ostringstream msg;
    msg << "universal_smatrix: potential at the matching radius (" << tail
        << " Ha) is not negligible against E = " << energy << " Ha; increase r_outer";
    fail_config(msg.str());
  }

  const int n = static_cast<int>(std::lround((cfg.r_outer - cfg.r_inner) / h)) + 1;
  if (n < 8) fail_config("universal_smatrix: grid has too few points");
  auto radius = [&](int i) { return cfg.r_inner + i * h; };
  auto f_of = [&](double r) {
    // u'' = f u  with  f = l(l+1)/r^2 - 2 mu (E + C6/r^6)
    const double r2 = r * r;
    const double r6 = r2 * r2 * r2;
    return lterm / r2 - 2.0 * mu * (energy + c6 / r6);
  };

  // Absorbing boundary: a purely incoming WKB wave u ~ exp(+i Rx^2 / 2r^2)
  // (local momentum sqrt(2 mu C6)/r^3 deep inside the well, flux toward the
  // origin, nothing reflected).
  const double rx2 = std::sqrt(2.0 * mu * c6);
  const double r0 = cfg.r_inner;
  const Complex u0 = std::exp(Complex(0.0, rx2 / (2.0 * r0 * r0)));
  const Complex du0 = Complex(0.0, -rx2 / (r0 * r0 * r0)) * u0;

  // Seed the second point with an ODE-consistent Taylor step through O(h^5);
  // sampling the WKB form at both points would inject an O(h^2) boundary
  // error and drag the scheme below its design order.
  const double f0 = f_of(r0);
  const double f1d = 12.0 * mu * c6 / std::pow(r0, 7) - 2.0 * lterm / std::pow(r0, 3);
  const double f2d = -84.0 * mu * c6 / std::pow(r0, 8) + 6.0 * lterm / std::pow(r0, 4);
  const double f3d = 672.0 * mu * c6 / std::pow(r0, 9) - 24.0 * lterm / std::pow(r0, 5);
  const Complex u1 = u0 + h * du0 + (h * h / 2.0) * f0 * u0 +
                     (h * h * h / 6.0) * (f1d * u0 + f0 * du0) +
                     (h * h * h * h / 24.0) * ((f2d + f0 * f0) * u0 + 2.0 * f1d * du0) +
                     (h * h * h * h * h / 120.0) *
                         ((f3d + 4.0 * f0 * f1d) * u0 + (3.0 * f2d + f0 * f0) * du0);

  // Numerov propagation of u'' = f u.
  std::vector<Complex> u(n);
  std::vector<double> w(n), fv(n);
  for (int i = 0; i < n; ++i) {
    fv[i] = f_of(radius(i));
    w[i] = 1.0 - h * h / 12.0 * fv[i];
  }
  u[0] = u0;
  u[1] = u1;
  for (int i = 1; i + 1 < n; ++i)
    u[i + 1] = (2.0 * (1.0 + 5.0 * h * h / 12.0 * fv[i]) * u[i] - w[i - 1] * u[i - 1]) / w[i + 1];

  // Match u = cin h- + cout h+ two points shy of the end so a five-point
  // stencil can supply du/dr at the same order as the propagator.
  const int im = n - 3;
  const Complex um = u[im];
  const Complex dum =
      (u[im - 2] - 8.0 * u[im - 1] + 8.0 * u[im + 1] - u[im + 2]) / (12.0 * h);
  const FreeWaves fw = free_waves(l, k, radius(im));
  const Complex det = fw.h_minus * fw.dh_plus - fw.h_plus * fw.dh_minus;
  const Complex cin = (um * fw.dh_plus - dum * fw.h_plus) / det;
  const Complex cout = (dum * fw.h_minus - um * fw.dh_minus) / det;
  return -cout / cin;
}

double partial_rate_from_s(std::complex<double> s, double energy, int l, double reduced_mass) {
  const double k = std::sqrt(2.0 * reduced_mass * energy);
  const double loss = std::max(0.0, 1.0 - std::norm(s));
  return 2.0 * (2 * l + 1) * (k / reduced_mass) * (pi / (k * k)) * loss;
}

double partial_rate(const CollisionConfig& cfg, double energy, int l) {
  return partial_rate_from_s(universal_smatrix(cfg, energy, l), energy, l, cfg.reduced_mass);
}

double unitarity_limit(double energy, int l, double reduced_mass) {
  const double k = std::sqrt(2.0 * reduced_mass * energy);
  return 2.0 * (2 * l + 1) * (k / reduced_mass) * (pi / (k * k));
}

double h_function(double x) {
  if (x < 1.0) throw std::domain_error("h_function: requires x = kf/ki >= 1");
  if (x - 1.0 < 1.0e-12) return -0.5;  // threshold limit
  const double num = (1.0 - x * x) * (1.0 - x * x);
  return -0.5 - 0.75 * num * std::log((x - 1.0) / (x + 1.0)) / (x * (1.0 + x * x));
}

namespace {

struct BornKinematics {
  double ki, kf, x;
};

BornKinematics born_kinematics(double b_au, double energy, double reduced_mass,
                               double g_j, int flips) {
  if (!(b_au > 0.0))
    throw std::invalid_argument("dipolar relaxation: magnetic field must be positive");
  if (!(energy > 0.0)) throw std::invalid_argument("dipolar relaxation: energy must be positive");
  BornKinematics kin;
  kin.ki = std::sqrt(2.0 * reduced_mass * energy);
  const double released = flips * g_j * units::constants.bohr_magneton_au * b_au;
  kin.kf = std::sqrt(kin.ki * kin.ki + 2.0 * reduced_mass * released);
  kin.x = kin.kf / kin.ki;
  return kin;
}

double born_bracket(double reduced_mass, double g_j) {
  const double alpha = units::constants.fine_structure_alpha;
  const double moment = g_j * units::constants.bohr_magneton_au;
  return 2.0 * alpha * alpha * moment * moment * reduced_mass;
}

}  // namespace

double born_gamma1(double b_au, double energy, double reduced_mass, int j, double g_j) {
  const BornKinematics kin = born_kinematics(b_au, energy, reduced_mass, g_j, 1);
  const double br = born_bracket(reduced_mass, g_j);
  const double j3 = static_cast<double>(j) * j * j;
  return (4.0 * pi / 15.0) * j3 * br * br * (1.0 + h_function(kin.x)) * kin.kf / reduced_mass;
}

double born_gamma2(double b_au, double energy, double reduced_mass, int j, double g_j) {
  const BornKinematics kin = born_kinematics(b_au, energy, reduced_mass, g_j, 2);
  const double br = born_bracket(reduced_mass, g_j);
  const double j2 = static_cast<double>(j) * j;
  return (2.0 * pi / 15.0) * j2 * br * br * (1.0 + h_function(kin.x)) * kin.kf / reduced_mass;
}

double total_born_rate(double b_au, double energy, double reduced_mass, int j, double g_j) {
  return 2.0 * (born_gamma1(b_au, energy, reduced_mass, j, g_j) +
                born_gamma2(b_au, energy, reduced_mass, j, g_j));
}

std::vector<double> log_energy_grid(double e_min, double e_max, int n_points) {
  if (!(e_min > 0.0) || !(e_max > e_min))
    throw std::invalid_argument("log_energy_grid: need 0 < e_min < e_max");
  if (n_points < 2) throw std::invalid_argument("log_energy_grid: need at least two points");
  std::vector<double> grid(n_points);
  const double step = std::log(e_max / e_min) / (n_points - 1);
  for (int i = 0; i < n_points; ++i) grid[i] = e_min * std::exp(i * step);
  grid.back() = e_max;  // exact endpoint
  return grid;
}

RateTable build_rate_table(const CollisionConfig& cfg, const std::vector<double>& energies,
                           double b_field_au, double g_j, int j, int n_threads) {
  cfg.validate();
  if (energies.empty()) throw std::invalid_argument("build_rate_table: empty energy grid");
  if (!std::is_sorted(energies.begin(), energies.end()))
    throw std::invalid_argument("build_rate_table: energies must be ascending");

  RateTable table;
  table.energies = energies;
  table.l_max = cfg.l_max;
  table.b_field_au = b_field_au;
  const int ne = static_cast<int>(energies.size());
  const int nl = cfg.l_max + 1;
  table.beta_l.assign(nl, std::vector<double>(ne, 0.0));
  table.unitarity_l.assign(nl, std::vector<double>(ne, 0.0));
  table.beta_total.assign(ne, 0.0);
  table.gamma1.assign(ne, 0.0);
  table.gamma2.assign(ne, 0.0);
  table.gamma_total.assign(ne, 0.0);

  // One task per (energy, l) slot; any execution order writes the same table.
  const int n_tasks = ne * nl;
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const int workers = n_threads > 0 ? n_threads : static_cast<int>(hw);
  std::atomic<int> next{0};
  std::vector<std::string> errors(workers);

  auto worker = [&](int wid) {
    try {
      for (int task = next.fetch_add(1); task < n_tasks; task = next.fetch_add(1)) {
        const int ie = task / nl;
        const int l = task % nl;
        const double e = energies[ie];
        table.beta_l[l][ie] = partial_rate(cfg, e, l);
        table.unitarity_l[l][ie] = unitarity_limit(e, l, cfg.reduced_mass);
      }
    } catch (const std::exception& ex) {
      errors[wid] = ex.what();
      next.store(n_tasks);  // abort remaining work
    }
  };

  if (workers == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int wid = 0; wid < workers; ++wid) pool.emplace_back(worker, wid);
    for (auto& t : pool) t.join();
  }
  for (const auto& err : errors)
    if (!err.empty()) throw std::invalid_argument(err);

  for (int ie = 0; ie < ne; ++ie) {
    for (int l = 0; l < nl; ++l) table.beta_total[ie] += table.beta_l[l][ie];
    table.gamma1[ie] = born_gamma1(b_field_au, energies[ie], cfg.reduced_mass, j, g_j);
    table.gamma2[ie] = born_gamma2(b_field_au, energies[ie], cfg.reduced_mass, j, g_j);
    table.gamma_total[ie] = 2.0 * (table.gamma1[ie] + table.gamma2[ie]);
  }

  const int last = ne - 1;
  table.truncation_fraction =
      table.beta_total[last] > 0.0 ? table.beta_l[nl - 1][last] / table.beta_total[last] : 0.0;
  table.truncation_warning = table.truncation_fraction >= 1.0e-3;
  return table;
}

}  // namespace dylr::scattering
