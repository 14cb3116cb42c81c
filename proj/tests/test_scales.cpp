#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dylr/scales.hpp"
#include "dylr/units.hpp"

using namespace dylr;

namespace {
const double kGj = units::constants.g_factor_gj;
const double kMu = units::reduced_mass_au(163.929, 163.929);
}  // namespace

TEST_CASE("individual scales at reference points") {
  CHECK(scales::zeeman_scale(units::gauss_to_au(10.0), kGj) ==
        doctest::Approx(2.6411e-9).epsilon(1e-3));
  CHECK(scales::rotational_scale(50.0, kMu) == doctest::Approx(8.0315e-9).epsilon(1e-3));
  CHECK(scales::mdd_scale(50.0, kGj) == doctest::Approx(2.6269e-9).epsilon(1e-3));
  CHECK(scales::ad_scale(50.0, 25.0) == doctest::Approx(25.0 / std::pow(50.0, 6)).epsilon(1e-14));

  // Closed forms behind them.
  CHECK(scales::zeeman_scale(units::gauss_to_au(10.0), kGj) ==
        doctest::Approx(kGj * 0.5 * units::gauss_to_au(10.0)).epsilon(1e-14));
  CHECK(scales::rotational_scale(50.0, kMu) ==
        doctest::Approx(6.0 / (2.0 * kMu * 2500.0)).epsilon(1e-14));
}

TEST_CASE("scale crossings for the working field values") {
  auto mdd = [&](double r) { return scales::mdd_scale(r, kGj); };
  auto ad = [&](double r) { return scales::ad_scale(r, 25.0); };

  const double z10 = scales::zeeman_scale(units::gauss_to_au(10.0), kGj);
  const double z100 = scales::zeeman_scale(units::gauss_to_au(100.0), kGj);
  auto flat10 = [&](double) { return z10; };
  auto flat100 = [&](double) { return z100; };

  CHECK(scales::crossing_radius(ad, flat10, 20.0, 200.0) == doctest::Approx(45.993).epsilon(1e-4));
  CHECK(scales::crossing_radius(mdd, flat10, 20.0, 200.0) == doctest::Approx(49.910).epsilon(1e-4));
  CHECK(scales::crossing_radius(ad, flat100, 20.0, 200.0) == doctest::Approx(31.335).epsilon(1e-4));
  CHECK(scales::crossing_radius(mdd, flat100, 20.0, 200.0) == doctest::Approx(23.166).epsilon(1e-4));
}

TEST_CASE("dispersion-anisotropy vs dipole-dipole crossing has a closed form") {
  const double closed = scales::ad_mdd_crossing(25.0, kGj);
  CHECK(closed == doctest::Approx(42.383).epsilon(5e-5));

  auto mdd = [&](double r) { return scales::mdd_scale(r, kGj); };
  auto ad = [&](double r) { return scales::ad_scale(r, 25.0); };
  const double bisected = scales::crossing_radius(ad, mdd, 20.0, 200.0, 1e-6);
  CHECK(std::abs(bisected - closed) < 1e-5);
}

TEST_CASE("crossing search error handling") {
  auto one = [](double) { return 1.0; };
  auto two = [](double) { return 2.0; };
  CHECK_THROWS_AS(scales::crossing_radius(one, two, 20.0, 200.0), std::runtime_error);
  CHECK_THROWS_AS(scales::crossing_radius(one, two, 200.0, 20.0), std::invalid_argument);
}

TEST_CASE("scale grid layout") {
  const std::vector<double> r = {30.0, 40.0, 50.0};
  const auto grid = scales::build_scale_grid(r, {10.0, 100.0}, kGj, 8, kMu, 25.0);

  REQUIRE(grid.names.size() == 5);
  CHECK(grid.names[0] == "zeeman_10G");
  CHECK(grid.names[1] == "zeeman_100G");
  CHECK(grid.names[2] == "rotational");
  CHECK(grid.names[3] == "mdd");
  CHECK(grid.names[4] == "ad");
  REQUIRE(grid.columns.size() == grid.names.size());
  for (const auto& col : grid.columns) REQUIRE(col.size() == r.size());

  // Zeeman columns are flat; the others fall off with R.
  CHECK(grid.columns[0][0] == grid.columns[0][2]);
  CHECK(grid.columns[2][0] > grid.columns[2][2]);
  CHECK(grid.columns[3][0] > grid.columns[3][2]);
  CHECK(grid.columns[4][0] > grid.columns[4][2]);

  // Columns agree with the scalar functions.
  CHECK(grid.columns[3][1] == doctest::Approx(scales::mdd_scale(40.0, kGj)).epsilon(1e-15));
  CHECK(grid.columns[4][2] == doctest::Approx(scales::ad_scale(50.0, 25.0)).epsilon(1e-15));
}
