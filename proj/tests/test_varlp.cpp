#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "varbesov/corpus.hpp"
#include "varbesov/exponents.hpp"
#include "varbesov/grid.hpp"
#include "varbesov/varlp.hpp"

using namespace varbesov;

namespace {
Grid desk() { return Grid(1, 4, 8); }
}  // namespace

TEST_CASE("Luxemburg norm matches the constant-exponent closed form") {
  Grid g = desk();
  for (double pc : {0.7, 1.0, 2.0, 3.5}) {
    VariableExponent p = VariableExponent::constant(g, pc);
    for (int i = 0; i < 3; ++i) {
      Field f = random_band_limited(g, 100 + i, 200.0, 1.0);
      double a = luxemburg_norm(p, f);
      double b = oracle::lp_norm_const(pc, f);
      CHECK(a == Catch::Approx(b).epsilon(1e-8));
    }
  }
}

TEST_CASE("Luxemburg norm at p == inf is the sup") {
  Grid g = desk();
  VariableExponent p = VariableExponent::constant(g, inf);
  Field f = random_band_limited(g, 7, 200.0, 1.0);
  CHECK(luxemburg_norm(p, f) == Catch::Approx(f.max_abs()));
}

TEST_CASE("zero field has zero norm") {
  Grid g = desk();
  Field z(g);
  CHECK(luxemburg_norm(VariableExponent::constant(g, 1.3), z) == 0.0);
  CHECK(luxemburg_norm(parse_exponent("2 + 0.5*sin(x)", g), z) == 0.0);
}

TEST_CASE("unit ball characterization by the modular") {
  Grid g = desk();
  VariableExponent p = parse_exponent("2 + 0.8*sin(x)", g);
  for (int i = 0; i < 4; ++i) {
    Field f = random_band_limited(g, 200 + i, 200.0, 1.0);
    double t = luxemburg_norm(p, f);
    REQUIRE(t > 0.0);
    for (double sc : {0.5, 0.999, 1.001, 2.0}) {
      Field h = f;
      h *= sc / t;
      ModularReport m = modular(p, h);
      bool norm_leq = sc <= 1.0;
      bool mod_leq = m.finite && m.value <= 1.0 + 1e-9;
      CHECK(norm_leq == mod_leq);
    }
  }
}

TEST_CASE("Luxemburg norm is positively homogeneous") {
  Grid g = desk();
  VariableExponent p = parse_exponent("1.2 + 0.4*cos(x/2)", g);
  Field f = random_band_limited(g, 42, 150.0, 1.0);
  double base = luxemburg_norm(p, f);
  Field h = f;
  h *= 5.25;
  CHECK(luxemburg_norm(p, h) == Catch::Approx(5.25 * base).epsilon(1e-9));
}

TEST_CASE("mixed norm agrees with the constant-exponent closed form") {
  Grid g = desk();
  struct PQ {
    double p, q;
  };
  for (PQ c : {PQ{2.0, 1.0}, PQ{1.5, 0.7}, PQ{3.0, inf}, PQ{inf, 2.0}}) {
    VariableExponent p = VariableExponent::constant(g, c.p);
    VariableExponent q = VariableExponent::constant(g, c.q);
    std::vector<Field> fs;
    for (int v = 0; v < 5; ++v) fs.push_back(random_band_limited(g, 300 + v, 150.0, 1.0));
    double a = mixed_norm(p, q, fs);
    double b = oracle::mixed_norm_const(c.p, c.q, fs);
    CHECK(a == Catch::Approx(b).epsilon(1e-8));
  }
}

TEST_CASE("variable-q mixed norm agrees with the iterated infimum form") {
  Grid g(1, 4, 7);
  VariableExponent p = parse_exponent("1.6 + 0.4*sin(x)", g);
  VariableExponent q = parse_exponent("1.2 + 0.3*cos(x)", g);
  std::vector<Field> fs;
  for (int v = 0; v < 4; ++v) fs.push_back(random_band_limited(g, 400 + v, 100.0, 1.0));
  double a = mixed_norm(p, q, fs);
  double b = mixed_norm_infform(p, q, fs);
  CHECK(a == Catch::Approx(b).epsilon(1e-5));
}

TEST_CASE("mixed norm with one level reduces to the Luxemburg norm") {
  Grid g = desk();
  VariableExponent p = parse_exponent("2 + 0.5*sin(x)", g);
  VariableExponent q = parse_exponent("1.5 + 0.25*cos(x)", g);
  Field f = random_band_limited(g, 55, 150.0, 1.0);
  std::vector<Field> one{f};
  CHECK(mixed_norm(p, q, one) == Catch::Approx(luxemburg_norm(p, f)).epsilon(1e-9));
}

TEST_CASE("indicator norms") {
  Grid g = desk();
  for (double tc : {0.8, 1.0, 2.0}) {
    VariableExponent tau = VariableExponent::constant(g, tc);
    for (int v : {-2, 0, 3}) {
      DyadicCube Q(v, 1 >= cubes_per_axis(g, v) ? 0 : 1);
      double a = chi_norm(tau, Q);
      double b = oracle::chi_norm_const(tc, g, Q);
      CHECK(a == Catch::Approx(b).epsilon(1e-9));
    }
  }
}

TEST_CASE("cube-sup norm of an indicator against a hand computation") {
  // f = chi_Q for a level-0 cube, constant p and tau: the supremum over P of
  // ||f chi_P||_p / ||chi_P||_tau has closed form |Q cap P|^{1/p} / |P|^{1/tau}
  Grid g(1, 3, 5);
  double pc = 2.0, tc = 1.5;
  DyadicCube Q0(0, 3);
  Field f(g);
  for_cube_cells(g, Q0, [&](std::size_t i) { f.a[i] = 1.0; });
  double expected = 0.0;
  for (int v = -g.J0; v <= g.J; ++v) {
    for (const DyadicCube& P : cubes_at_level(g, v)) {
      double overlap = 0.0;  // measure of Q0 cap P
      for_cube_cells(g, P, [&](std::size_t i) {
        overlap += std::abs(f.a[i]) > 0.5 ? g.cell_measure() : 0.0;
      });
      if (overlap == 0.0) continue;
      double measP = std::pow(P.l(), g.dim);
      expected = std::max(expected,
                          std::pow(overlap, 1.0 / pc) / std::pow(measP, 1.0 / tc));
    }
  }
  double got = lp_tau_norm(VariableExponent::constant(g, pc),
                           VariableExponent::constant(g, tc), f);
  // the abbreviation sups over cubes with |P| >= 1 only (levels v <= 0)
  double expected_small = 0.0;
  for (int v = -g.J0; v <= 0; ++v) {
    for (const DyadicCube& P : cubes_at_level(g, v)) {
      double overlap = 0.0;
      for_cube_cells(g, P, [&](std::size_t i) {
        overlap += std::abs(f.a[i]) > 0.5 ? g.cell_measure() : 0.0;
      });
      if (overlap == 0.0) continue;
      double measP = std::pow(P.l(), g.dim);
      expected_small = std::max(
          expected_small, std::pow(overlap, 1.0 / pc) / std::pow(measP, 1.0 / tc));
    }
  }
  CHECK(got == Catch::Approx(expected_small).epsilon(1e-9));
  CHECK(expected_small <= expected + 1e-12);
}

TEST_CASE("gather_cube extracts exactly the cube's cells") {
  Grid g(2, 2, 3);
  std::vector<double> src(g.size());
  for (std::size_t i = 0; i < src.size(); ++i) src[i] = double(i);
  DyadicCube Q(1, 2, 1);
  std::vector<double> got;
  gather_cube(g, Q, src, got);
  std::vector<double> want;
  for_cube_cells(g, Q, [&](std::size_t i) { want.push_back(src[i]); });
  CHECK(got == want);
}

TEST_CASE("Morrey norm collapses to Lebesgue at u == p") {
  Grid g = desk();
  for (double pc : {1.0, 2.5}) {
    Field f = random_band_limited(g, 500, 200.0, 1.0);
    CHECK(morrey_norm(pc, pc, f) ==
          Catch::Approx(oracle::lp_norm_const(pc, f)).epsilon(1e-10));
  }
}

TEST_CASE("Morrey norm is monotone in u") {
  // the space grows as u decreases at fixed p, so the norm shrinks; u == p
  // is the Lebesgue endpoint and the largest value
  Grid g = desk();
  Field f = random_band_limited(g, 501, 200.0, 1.0);
  double p = 3.0;
  double prev = std::numeric_limits<double>::infinity();
  for (double u : {3.0, 2.0, 1.0, 0.5}) {
    double m = morrey_norm(u, p, f);
    CHECK(m <= prev + 1e-12);
    CHECK(m > 0.0);
    prev = m;
  }
  CHECK_THROWS_AS(morrey_norm(4.0, 3.0, f), std::invalid_argument);
}

TEST_CASE("cube-sup modular form characterizes the unit ball") {
  Grid g(1, 4, 7);
  VariableExponent p = parse_exponent("1.8 + 0.3*sin(x)", g);
  VariableExponent q = parse_exponent("1.4 + 0.2*cos(x)", g);
  VariableExponent tau = parse_exponent("1.1 + 0.1*sin(x/2)", g);
  Field f = random_band_limited(g, 600, 150.0, 1.0);
  double t = lp_tau_norm(p, tau, f);
  REQUIRE(t > 0.0);
  for (double sc : {0.98, 1.02}) {
    Field h = f;
    h *= sc / t;
    double form = lp_tau_modular_form(p, q, tau, h);
    CHECK((sc <= 1.0) == (form <= 1.0 + 1e-9));
  }
}
