#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "varbesov/besov.hpp"
#include "varbesov/corpus.hpp"

using namespace varbesov;

namespace {

BesovParams const_params(const Grid& g, const FilterBank& bank, double alpha, double p,
                         double q, double tau) {
  return BesovParams{VariableExponent::constant(g, alpha), VariableExponent::constant(g, p),
                     VariableExponent::constant(g, q), VariableExponent::constant(g, tau),
                     bank};
}

}  // namespace

TEST_CASE("constant-exponent norm matches the classical display") {
  Grid g(1, 3, 6);
  FilterBank bank = build_filterbank(g);
  Field f = random_band_limited(g, 101, bank.resolvable_band(), 1.2);
  for (double q : {1.5, inf}) {
    BesovParams prm = const_params(g, bank, 0.5, 2.0, q, 3.0);
    double lib = besov_type_norm(f, prm).value;
    double ref = oracle::besov_classical_const(f, bank, 0.5, 2.0, q, 1.0 / 3.0);
    CHECK(lib == Catch::Approx(ref).epsilon(1e-8));
  }
}

TEST_CASE("constant-exponent norm matches the classical display in two dimensions") {
  Grid g(2, 2, 3);
  FilterBank bank = build_filterbank(g);
  Field f = random_band_limited(g, 111, bank.resolvable_band(), 1.2);
  BesovParams prm = const_params(g, bank, 0.4, 2.5, 1.2, 2.0);
  double lib = besov_type_norm(f, prm).value;
  double ref = oracle::besov_classical_const(f, bank, 0.4, 2.5, 1.2, 1.0 / 2.0);
  CHECK(lib == Catch::Approx(ref).epsilon(1e-8));
}

TEST_CASE("tilde norm weights cubes by measure to the one over p") {
  Grid g(1, 3, 6);
  FilterBank bank = build_filterbank(g);
  Field f = random_band_limited(g, 121, bank.resolvable_band(), 1.2);
  BesovParams prm = const_params(g, bank, 0.3, 2.0, 1.5, 1.0);
  double lib = besov_tilde_norm(f, prm).value;
  double ref = oracle::besov_classical_const(f, bank, 0.3, 2.0, 1.5, 1.0 / 2.0);
  CHECK(lib == Catch::Approx(ref).epsilon(1e-8));
}

TEST_CASE("variable norm without cube supremum equals the full-box display") {
  Grid g(1, 3, 6);
  FilterBank bank = build_filterbank(g);
  Field f = random_band_limited(g, 131, bank.resolvable_band(), 1.2);
  VariableExponent alpha = VariableExponent::constant(g, 0.6);
  VariableExponent p = VariableExponent::constant(g, 2.0);
  VariableExponent q = VariableExponent::constant(g, 1.3);
  double lib = besov_variable_norm(f, alpha, p, q, bank);
  // with weight |P|^0 the largest cube carries the whole-box mixed norm
  double ref = oracle::besov_classical_const(f, bank, 0.6, 2.0, 1.3, 0.0);
  CHECK(lib == Catch::Approx(ref).epsilon(1e-8));
}

TEST_CASE("norm scales linearly with the field") {
  Grid g(1, 3, 6);
  FilterBank bank = build_filterbank(g);
  Field f = random_band_limited(g, 141, bank.resolvable_band(), 1.2);
  BesovParams prm = const_params(g, bank, 0.5, 1.7, 1.1, 2.2);
  double base = besov_type_norm(f, prm).value;
  Field cf = f;
  cf *= 3.25;
  CHECK(besov_type_norm(cf, prm).value == Catch::Approx(3.25 * base).epsilon(1e-9));
}

TEST_CASE("zero field has zero norm and diagnostics are populated") {
  Grid g(1, 3, 5);
  FilterBank bank = build_filterbank(g);
  BesovParams prm = const_params(g, bank, 0.5, 2.0, 2.0, 1.0);
  Field zero(g);
  NormResult rz = besov_type_norm(zero, prm);
  CHECK(rz.value == 0.0);
  Field f = random_band_limited(g, 151, bank.resolvable_band(), 1.2);
  NormResult r = besov_type_norm(f, prm);
  CHECK(r.value > 0.0);
  REQUIRE(r.cube_levels.size() == r.level_sup.size());
  CHECK(r.cube_levels.front() == -g.J0);
  CHECK(r.cube_levels.back() == bank.V);
  double best = 0.0;
  for (double s : r.level_sup) best = std::max(best, s);
  CHECK(best == Catch::Approx(r.value));
}

TEST_CASE("restricted supremum never exceeds the full one") {
  Grid g(1, 3, 6);
  FilterBank bank = build_filterbank(g);
  Field f = random_band_limited(g, 161, bank.resolvable_band(), 1.2);
  VariableExponent alpha = random_exponent(g, 162, 0.2, 0.8, 2);
  BesovParams prm{alpha, random_exponent(g, 163, 1.2, 2.0, 2),
                  random_exponent(g, 164, 1.0, 2.5, 2), random_exponent(g, 165, 0.9, 1.1, 2),
                  bank};
  NormResult full = besov_type_norm(f, prm);
  NormResult sharp = besov_norm_sharp(f, prm);
  CHECK(full.value > 0.0);
  CHECK(sharp.value > 0.0);
  CHECK(sharp.value <= full.value * (1.0 + 1e-12));
}

TEST_CASE("shifted window at gamma zero reproduces the norm") {
  Grid g(1, 3, 6);
  FilterBank bank = build_filterbank(g);
  Field f = random_band_limited(g, 171, bank.resolvable_band(), 1.2);
  VariableExponent alpha = random_exponent(g, 172, 0.2, 0.8, 2);
  BesovParams prm{alpha, random_exponent(g, 173, 1.2, 2.0, 2),
                  random_exponent(g, 174, 1.0, 2.5, 2), random_exponent(g, 175, 0.9, 1.1, 2),
                  bank};
  double a = besov_type_norm(f, prm).value;
  double b = besov_norm_star(f, prm, 0).value;
  CHECK(b == Catch::Approx(a).epsilon(1e-12));
  CHECK_THROWS_AS(besov_norm_star(f, prm, -1), std::invalid_argument);
  CHECK_THROWS_AS(besov_norm_star(f, prm, g.J0 + 1), std::invalid_argument);
}

TEST_CASE("morrey scale collapses to lebesgue at u equal p") {
  Grid g(1, 3, 6);
  FilterBank bank = build_filterbank(g);
  Field f = random_band_limited(g, 181, bank.resolvable_band(), 1.2);
  VariableExponent alpha = VariableExponent::constant(g, 0.45);
  double viaMorrey = besov_morrey_norm(f, alpha, 2.0, 1.4, 2.0, bank);
  VariableExponent p = VariableExponent::constant(g, 2.0);
  VariableExponent q = VariableExponent::constant(g, 1.4);
  double viaMixed = besov_variable_norm(f, alpha, p, q, bank);
  CHECK(viaMorrey == Catch::Approx(viaMixed).epsilon(1e-10));
  // q = inf takes the best level
  double vinf = besov_morrey_norm(f, alpha, 2.0, inf, 2.0, bank);
  double best = 0.0;
  for (int v = 0; v <= bank.V; ++v) {
    std::vector<double> w = weight_block(lp_block(f, bank, v), alpha, v);
    Field wf(g);
    for (std::size_t i = 0; i < w.size(); ++i) wf.a[i] = w[i];
    best = std::max(best, morrey_norm(2.0, 2.0, wf));
  }
  CHECK(vinf == Catch::Approx(best));
  CHECK_THROWS_AS(besov_morrey_norm(f, alpha, 1.0, 1.0, 2.0, bank), std::invalid_argument);
}

TEST_CASE("pointwise peak at tau equal p is the largest weighted sample") {
  Grid g(1, 3, 5);
  FilterBank bank = build_filterbank(g);
  Field f = random_band_limited(g, 191, bank.resolvable_band(), 1.2);
  BesovParams prm = const_params(g, bank, 0.5, 2.0, 1.0, 2.0);
  double peak = besov_pointwise_peak(f, prm);
  double direct = 0.0;
  for (int v = 0; v <= bank.V; ++v) {
    for (double w : weight_block(lp_block(f, bank, v), prm.alpha, v))
      direct = std::max(direct, w);
  }
  CHECK(peak == Catch::Approx(direct).epsilon(1e-12));
}

TEST_CASE("parameter validation") {
  Grid g(1, 3, 5);
  FilterBank bank = build_filterbank(g);
  Field f(g);
  BesovParams bad = const_params(g, bank, 0.5, 2.0, 1.0, 2.0);
  bad.alpha = VariableExponent::constant(g, inf);
  CHECK_THROWS_AS(besov_type_norm(f, bad), std::invalid_argument);
  Grid other(1, 3, 6);
  Field h(other);
  BesovParams prm = const_params(g, bank, 0.5, 2.0, 1.0, 2.0);
  CHECK_THROWS_AS(besov_type_norm(h, prm), std::invalid_argument);
}
