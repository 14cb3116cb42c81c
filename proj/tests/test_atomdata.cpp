#include <doctest.h>

#include <sstream>
#include <stdexcept>
#include <string>

#include "dylr/atomdata.hpp"

using namespace dylr;

namespace {

std::vector<atomdata::TransitionLine> parse(const std::string& text, int j = 8) {
  std::istringstream in(text);
  return atomdata::parse_linelist(in, j);
}

bool message_contains(const std::invalid_argument& e, const std::string& needle) {
  return std::string(e.what()).find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("line list parsing") {
  auto lines = parse(
      "# toy spectrum\n"
      "7 0.08 0.9\n"
      "8 0.10 1.1 f\n"
      "\n"
      "9 0.12 0.05 d2\n");
  REQUIRE(lines.size() == 3);
  CHECK(lines[0].excited_j == 7);
  CHECK(lines[0].energy_au == doctest::Approx(0.08));
  CHECK(lines[0].kind == atomdata::StrengthKind::oscillator_strength);
  CHECK(lines[1].kind == atomdata::StrengthKind::oscillator_strength);
  CHECK(lines[2].kind == atomdata::StrengthKind::reduced_dipole_squared);
  CHECK(lines[2].strength == doctest::Approx(0.05));
}

TEST_CASE("line list errors carry the line number") {
  auto expect_error = [](const std::string& text, const std::string& needle) {
    try {
      parse(text);
      FAIL_CHECK("expected invalid_argument for: " << text);
    } catch (const std::invalid_argument& e) {
      CHECK(message_contains(e, needle));
    }
  };

  expect_error("7 0.1\n", "line 1");                     // missing strength
  expect_error("x 0.1 1.0\n", "line 1");                 // bad j field
  expect_error("8 0.1 1.0 q\n", "line 1");               // bad kind tag
  expect_error("8 0.1 1.0 f extra\n", "line 1");         // trailing junk
  expect_error("8 0.1 1.0\n5 0.1 1.0\n", "line 2");      // j outside dipole window
  expect_error("8 0.1 1.0\n\n8 -0.1 1.0\n", "line 3");   // negative energy
  expect_error("8 0.1 -1.0\n", "line 1");                // negative strength
}

TEST_CASE("oscillator strength to squared reduced dipole") {
  atomdata::TransitionLine f_line{8, 0.1, 1.0, atomdata::StrengthKind::oscillator_strength};
  // f = (2/3) dE |d|^2 / (2j+1)  =>  |d|^2 = 3 (2j+1) f / (2 dE) = 255 here.
  CHECK(atomdata::reduced_dipole_sq(f_line, 8) == doctest::Approx(255.0).epsilon(1e-14));

  atomdata::TransitionLine d2_line{8, 0.1, 42.0, atomdata::StrengthKind::reduced_dipole_squared};
  CHECK(atomdata::reduced_dipole_sq(d2_line, 8) == doctest::Approx(42.0).epsilon(1e-14));
}

TEST_CASE("effective line model") {
  auto lines = atomdata::effective_line_model();
  REQUIRE(lines.size() == 3);
  for (const auto& l : lines) {
    CHECK(l.energy_au == doctest::Approx(0.1));
    CHECK(l.strength == doctest::Approx(1.0));
  }
  CHECK(lines[0].excited_j + lines[1].excited_j + lines[2].excited_j == 7 + 8 + 9);
}

TEST_CASE("dispersion sums from the effective model") {
  auto k = atomdata::build_k_tensor(atomdata::effective_line_model());
  // Every channel has |d|^2 = 255 and dE = 0.1: K = 255^2 / 0.2 everywhere.
  for (int ja = 7; ja <= 9; ++ja)
    for (int jb = 7; jb <= 9; ++jb)
      CHECK(k.at(ja, jb) == doctest::Approx(255.0 * 255.0 / 0.2).epsilon(1e-14));
}

TEST_CASE("dispersion sums are symmetric and positive for irregular input") {
  auto k = atomdata::build_k_tensor(parse(
      "7 0.080 0.9\n"
      "8 0.100 1.1\n"
      "9 0.120 0.7\n"
      "7 0.150 0.2\n"
      "9 0.045 0.3\n"));
  for (int ja = 7; ja <= 9; ++ja)
    for (int jb = 7; jb <= 9; ++jb) {
      CHECK(k.at(ja, jb) > 0.0);
      CHECK(k.at(ja, jb) == doctest::Approx(k.at(jb, ja)).epsilon(1e-15));
    }
}

TEST_CASE("k tensor access") {
  atomdata::KTensor k(8);
  k.set(7, 8, 3.5);
  CHECK(k.at(7, 8) == 3.5);
  CHECK(k.at(8, 7) == 3.5);  // mirror entry written too
  CHECK(k.j_ground() == 8);
  CHECK_THROWS_AS(k.at(5, 8), std::out_of_range);
  CHECK_THROWS_AS(k.at(8, 10), std::out_of_range);
}

TEST_CASE("baked dispersion sums") {
  auto k = atomdata::baked_k_tensor();
  CHECK(k.j_ground() == 8);
  CHECK(k.at(7, 7) == doctest::Approx(71528.597));
  CHECK(k.at(8, 8) == doctest::Approx(92438.922));
  CHECK(k.at(9, 9) == doctest::Approx(108705.654));
  CHECK(k.at(7, 8) == doctest::Approx(81313.663));
  CHECK(k.at(8, 7) == doctest::Approx(81313.663));
  CHECK(k.at(7, 9) == doctest::Approx(88173.833));
  CHECK(k.at(8, 9) == doctest::Approx(100240.311));
}
