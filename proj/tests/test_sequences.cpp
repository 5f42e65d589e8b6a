#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "varbesov/corpus.hpp"
#include "varbesov/sequences.hpp"

using namespace varbesov;

TEST_CASE("coefficient sequence layout") {
  Grid g(1, 3, 6);
  CoefficientSequence s(g, 4);
  CHECK(s.lam.size() == 5u);
  CHECK(s.level_count(0) == 8u);
  CHECK(s.level_count(4) == 128u);
  s.at(2, 7) = cplx(1.0, -2.0);
  CHECK(s.at(2, 7) == cplx(1.0, -2.0));
  CHECK(s.max_abs() == Catch::Approx(std::sqrt(5.0)));
  CHECK_THROWS_AS(CoefficientSequence(g, -1), std::invalid_argument);
  CHECK_THROWS_AS(CoefficientSequence(g, g.J - 1), std::invalid_argument);

  Grid g2(2, 2, 3);
  CoefficientSequence t(g2, 1);
  CHECK(t.level_count(1) == 64u);
  t.at(1, 3, 5) = cplx(2.0);
  CHECK(t.at(1, 3, 5) == cplx(2.0));
  CHECK(cube_flat_index(t, DyadicCube(1, 3, 5)) == 3u * 8u + 5u);
}

TEST_CASE("transform pair is the identity on resolvable fields") {
  for (int dim : {1, 2}) {
    Grid g = dim == 1 ? Grid(1, 3, 6) : Grid(2, 2, 4);
    FilterBank bank = build_filterbank(g);
    Field f = random_band_limited(g, 201 + dim, bank.resolvable_band(), 1.2);
    CoefficientSequence s = phi_transform(f, bank);
    Field r = inverse_phi_transform(s, bank);
    double scale = f.max_abs();
    double worst = 0.0;
    for (std::size_t i = 0; i < f.a.size(); ++i)
      worst = std::max(worst, std::abs(r.a[i] - f.a[i]));
    CHECK(worst <= 1e-10 * scale);
  }
}

TEST_CASE("synthesis of a single coefficient is a shaped corner kernel") {
  Grid g(1, 3, 6);
  FilterBank bank = build_filterbank(g);
  int v = 2, m = 5;
  CoefficientSequence s(g, bank.V);
  s.at(v, m) = cplx(1.0);
  Field out = inverse_phi_transform(s, bank);
  // equivalently: run the level transfer over a unit spike at the corner
  Field spike(g);
  int stride = 1 << (g.J - v);
  spike.a[std::size_t(m) * stride] = std::pow(2.0, -0.5 * v) / g.cell_measure();
  Field expect = lp_block(spike, bank, v);
  for (std::size_t i = 0; i < out.a.size(); i += 5)
    CHECK(std::abs(out.a[i] - expect.a[i]) < 1e-12);
}

TEST_CASE("majorant dominates and tightens with distance decay") {
  Grid g(1, 3, 6);
  FilterBank bank = build_filterbank(g);
  CoefficientSequence s = random_coefficients(g, bank.V, 211, 0.2, 0.5);
  CoefficientSequence star = lambda_star(s, 1.2, 4.0);
  CoefficientSequence star_heavier = lambda_star(s, 1.2, 6.0);
  for (int v = 0; v <= s.V; ++v)
    for (std::size_t i = 0; i < s.lam[v].size(); ++i) {
      CHECK(std::abs(star.lam[v][i]) >= std::abs(s.lam[v][i]));
      CHECK(std::abs(star_heavier.lam[v][i]) <= std::abs(star.lam[v][i]) * (1.0 + 1e-12));
    }
  CHECK_THROWS_AS(lambda_star(s, 0.0, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(lambda_star(s, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("majorant of a single spike has the closed form") {
  Grid g(1, 2, 4);
  CoefficientSequence s(g, 1);
  s.at(0, 0) = cplx(1.0);
  CoefficientSequence star = lambda_star(s, 0.5, 3.0);
  // lambda*_m = (1 + dist(m,0))^{-d/r} with periodic corner distance
  CHECK(std::abs(star.at(0, 0)) == Catch::Approx(1.0));
  CHECK(std::abs(star.at(0, 1)) == Catch::Approx(1.0 / 64.0));
  CHECK(std::abs(star.at(0, 2)) == Catch::Approx(1.0 / 729.0));
  CHECK(std::abs(star.at(0, 3)) == Catch::Approx(1.0 / 64.0));
}

TEST_CASE("sup and inf sequences sandwich the coefficients") {
  Grid g(1, 3, 6);
  FilterBank bank = build_filterbank(g);
  Field f = random_band_limited(g, 221, bank.resolvable_band(), 1.2);
  CoefficientSequence lam = phi_transform(f, bank);
  CoefficientSequence sup = sup_sequence(f, bank);
  CoefficientSequence lo = inf_sequence(f, bank, 2);
  for (int v = 0; v <= bank.V; ++v)
    for (std::size_t i = 0; i < lam.lam[v].size(); ++i) {
      CHECK(std::abs(lam.lam[v][i]) <= std::abs(sup.lam[v][i]) * (1.0 + 1e-12));
      CHECK(std::abs(lo.lam[v][i]) <= std::abs(sup.lam[v][i]) * (1.0 + 1e-12));
    }
  CHECK_THROWS_AS(inf_sequence(f, bank, -1), std::invalid_argument);
  CHECK_THROWS_AS(inf_sequence(f, bank, g.J - bank.V + 1), std::invalid_argument);
}

TEST_CASE("sequence norm of a single coefficient has the closed form") {
  Grid g(1, 3, 6);
  int v0 = 2, m0 = 5;
  double a = 0.4, p = 1.8, q = 1.3, tau = 2.5;
  CoefficientSequence s(g, 4);
  s.at(v0, m0) = cplx(0.7, 0.4);
  double A = std::abs(s.at(v0, m0)) * std::pow(2.0, v0 * (a + 0.5));
  SequenceParams prm{VariableExponent::constant(g, a), VariableExponent::constant(g, p),
                     VariableExponent::constant(g, q), VariableExponent::constant(g, tau)};
  // the supremum sits at P = Q itself: A |Q|^{1/p - 1/tau}, and A for the
  // measure-weighted family
  double measQ = std::pow(2.0, -v0);
  CHECK(seq_b_norm(s, prm).value ==
        Catch::Approx(A * std::pow(measQ, 1.0 / p - 1.0 / tau)).epsilon(1e-9));
  CHECK(seq_b_tilde_norm(s, prm).value == Catch::Approx(A).epsilon(1e-9));
  CHECK(seq_b_norm(s, prm).argmax.level == v0);
  CHECK(seq_b_norm(s, prm).argmax.m[0] == m0);
}

TEST_CASE("coefficient bound constant is one for a lone coefficient") {
  Grid g(1, 3, 6);
  CoefficientSequence s(g, 4);
  s.at(3, 11) = cplx(-2.5, 1.0);
  SequenceParams prm{VariableExponent::constant(g, 0.6), VariableExponent::constant(g, 2.0),
                     VariableExponent::constant(g, 1.5), VariableExponent::constant(g, 1.2)};
  CHECK(coefficient_bound_constant(s, prm, false) == Catch::Approx(1.0).epsilon(1e-8));
  CHECK(coefficient_bound_constant(s, prm, true) == Catch::Approx(1.0).epsilon(1e-8));
  CoefficientSequence zero(g, 4);
  CHECK(coefficient_bound_constant(zero, prm, false) == 0.0);
}

TEST_CASE("level guard on synthesis") {
  Grid g(1, 3, 6);
  FilterBank bank = build_filterbank(g);
  CoefficientSequence s(g, 2);
  FilterBank clipped = bank;
  clipped.V = 1;
  CHECK_THROWS_AS(inverse_phi_transform(s, clipped), std::invalid_argument);
  Grid other(1, 3, 5);
  Field f(other);
  CHECK_THROWS_AS(phi_transform(f, bank), std::invalid_argument);
}
