#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "varbesov/corpus.hpp"
#include "varbesov/filterbank.hpp"
#include "varbesov/grid.hpp"

using namespace varbesov;

TEST_CASE("ramp profile") {
  CHECK(profile_T(0.0) == 0.0);
  CHECK(profile_T(1.0) == 1.0);
  CHECK(profile_T(0.5) == Catch::Approx(0.5));
  double prev = -1.0;
  for (int i = 0; i <= 64; ++i) {
    double t = profile_T(i / 64.0);
    CHECK(t >= prev);
    prev = t;
  }
}

TEST_CASE("cutoff admissibility") {
  Grid g(1, 3, 5);
  CHECK_NOTHROW(build_filterbank(g));
  CHECK_NOTHROW(build_filterbank(g, BankProfile{1.0, 2.0}));
  CHECK_NOTHROW(build_filterbank(g, BankProfile{21.0 / 20.0, 39.0 / 20.0}));
  CHECK_THROWS_AS(build_filterbank(g, BankProfile{0.99, 1.9}), std::invalid_argument);
  CHECK_THROWS_AS(build_filterbank(g, BankProfile{1.2, 1.9}), std::invalid_argument);
  CHECK_THROWS_AS(build_filterbank(g, BankProfile{1.1, 5.0 / 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(build_filterbank(g, BankProfile{1.1, 2.01}), std::invalid_argument);
  CHECK_THROWS_AS(build_filterbank(Grid(1, 3, 1)), std::invalid_argument);
}

TEST_CASE("symbol supports") {
  Grid g(1, 3, 5);
  FilterBank b = build_filterbank(g);
  CHECK(b.Phi_hat(0.0) == 1.0);
  CHECK(b.Phi_hat(1.1) == 1.0);
  CHECK(b.Phi_hat(1.9) == 0.0);
  CHECK(b.phi_hat(0.55) == 0.0);  // vanishes at and below t1/2
  CHECK(b.phi_hat(1.9) == 0.0);
  CHECK(b.phi_hat(1.0) > 0.0);
  CHECK(b.band_margin > 0.0);
  CHECK(b.low_margin > 0.0);
  CHECK(b.V == g.max_level());
  CHECK(b.resolvable_band() == Catch::Approx(1.1 * std::ldexp(1.0, b.V)));
  // shifted bottom window is the low-pass at a dilated argument
  CHECK(b.star_bottom(2, 0.4) == Catch::Approx(b.Phi_hat(1.6)));
}

TEST_CASE("squares telescope to one on the resolvable band") {
  Grid g(1, 4, 8);
  CHECK(calderon_residual(build_filterbank(g)) <= 1e-12);
  CHECK(calderon_residual(build_filterbank(g, BankProfile{21.0 / 20.0, 39.0 / 20.0})) <=
        1e-12);
  Grid g2(2, 4, 4);
  CHECK(calderon_residual(build_filterbank(g2)) <= 1e-12);
}

TEST_CASE("a pure tone lands in the expected blocks") {
  Grid g(1, 4, 8);
  FilterBank b = build_filterbank(g);
  // mode 8 sits at |xi| = pi: phi_hat(2^-v pi) is nonzero only for v in {1, 2}
  Field f = sample(g, [&](double x, double) {
    return std::exp(cplx(0.0, 2.0 * pi * 8.0 * x / g.box()));
  });
  double e_sum = 0.0;
  for (int v = 0; v <= b.V; ++v) {
    Field blk = lp_block(f, b, v);
    double amp = blk.max_abs();
    if (v == 1 || v == 2) {
      CHECK(amp > 0.05);
      e_sum += amp * amp;
    } else {
      CHECK(amp < 1e-12);
    }
  }
  CHECK(e_sum == Catch::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("block reconstruction is the identity below the band") {
  Grid g(1, 3, 6);
  FilterBank b = build_filterbank(g);
  Field f = random_band_limited(g, 91, b.resolvable_band(), 1.0);
  Field r = reconstruct_blocks(f, b);
  double scale = f.max_abs();
  for (std::size_t i = 0; i < f.a.size(); i += 7)
    CHECK(std::abs(r.a[i] - f.a[i]) <= 1e-12 * scale);
  CHECK(is_resolvable(f, b, 1e-12));
}

TEST_CASE("level access is guarded") {
  Grid g(1, 3, 5);
  FilterBank b = build_filterbank(g);
  Field f(g);
  CHECK_THROWS_AS(lp_block(f, b, b.V + 1), std::invalid_argument);
  Grid other(1, 3, 6);
  Field h(other);
  CHECK_THROWS_AS(lp_block(h, b, 0), std::invalid_argument);
  // a tone above the band is flagged
  Field tone = sample(g, [&](double x, double) {
    return std::exp(cplx(0.0, 2.0 * pi * 40.0 * x / g.box()));
  });
  CHECK(!is_resolvable(tone, b, 1e-12));
}
