#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "exponents.hpp"
#include "fft.hpp"
#include "grid.hpp"
#include "sequences.hpp"

namespace varbesov {

// real random field with decaying spectrum, modes restricted to |xi| <= band,
// normalized to unit sup
inline Field random_band_limited(const Grid& g, std::uint64_t seed, double band,
                                 double decay = 1.5) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 2.0 * pi);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Field spec(g);
  int N = g.side();
  auto put = [&](std::size_t idx, double xi_abs) {
    if (xi_abs > band) return;
    double mag = std::pow(1.0 + xi_abs, -decay) * std::abs(gauss(rng));
    spec.a[idx] = std::polar(mag, unif(rng));
  };
  if (g.dim == 1) {
    for (int i = 0; i < N; ++i) put(i, g.freq_abs(i, 0));
  } else {
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        put(static_cast<std::size_t>(i) * N + j, g.freq_abs(i, j));
  }
  // hermitian symmetrization makes the samples real
  Field sym(g);
  auto neg = [N](int i) { return i == 0 ? 0 : N - i; };
  if (g.dim == 1) {
    for (int i = 0; i < N; ++i)
      sym.a[i] = 0.5 * (spec.a[i] + std::conj(spec.a[neg(i)]));
  } else {
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        sym.a[static_cast<std::size_t>(i) * N + j] =
            0.5 * (spec.a[static_cast<std::size_t>(i) * N + j] +
                   std::conj(spec.a[static_cast<std::size_t>(neg(i)) * N + neg(j)]));
  }
  fft_inplace(g, sym.a, FFTW_BACKWARD);  // unnormalized synthesis from coefficients
  for (cplx& z : sym.a) z = cplx(z.real(), 0.0);
  double m = sym.max_abs();
  if (m > 0.0) sym *= 1.0 / m;
  return sym;
}

// smooth periodic exponent with range strictly inside [lo, hi]
inline VariableExponent random_exponent(const Grid& g, std::uint64_t seed, double lo,
                                        double hi, int waves = 2) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 2.0 * pi);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> raw(g.size(), 0.0);
  for (int w = 1; w <= waves; ++w) {
    double a0 = gauss(rng), f0 = unif(rng);
    double a1 = gauss(rng), f1 = unif(rng);
    double omega = 2.0 * pi * w / g.box();
    for (std::size_t i = 0; i < raw.size(); ++i) {
      auto co = g.cell_coords(i);
      raw[i] += a0 * std::sin(omega * co[0] + f0);
      if (g.dim == 2) raw[i] += a1 * std::sin(omega * co[1] + f1);
    }
  }
  double rmax = 0.0;
  for (double r : raw) rmax = std::max(rmax, std::abs(r));
  double mid = 0.5 * (lo + hi), half = 0.45 * (hi - lo);
  std::vector<double> vals(raw.size(), mid);
  if (rmax > 0.0)
    for (std::size_t i = 0; i < raw.size(); ++i) vals[i] = mid + half * raw[i] / rmax;
  return VariableExponent::from_samples(g, std::move(vals));
}

// two-valued exponent, jump at the box midpoint along the first axis
inline VariableExponent step_exponent(const Grid& g, double a, double b) {
  std::vector<double> vals(g.size());
  double mid = 0.5 * g.box();
  for (std::size_t i = 0; i < vals.size(); ++i)
    vals[i] = g.cell_coords(i)[0] < mid ? a : b;
  return VariableExponent::from_samples(g, std::move(vals));
}

// exponent saturating the log-Hoelder condition: base + amp / log(e + 1/d)
// with d the periodic distance to the origin cell. Every pair against the
// origin realizes the constant amp exactly, at every distance scale.
inline VariableExponent extremal_log_exponent(const Grid& g, double amp, double base) {
  std::vector<double> vals(g.size(), base);
  for (std::size_t i = 0; i < vals.size(); ++i) {
    auto co = g.cell_coords(i);
    double d = g.dim == 1 ? g.periodic_dist(co[0]) : g.periodic_dist(co[0], co[1]);
    if (d > 0.0) vals[i] = base + amp / std::log(std::exp(1.0) + 1.0 / d);
  }
  return VariableExponent::from_samples(g, std::move(vals));
}

// sparse complex coefficients, per-level magnitude scale 2^{-v * decay}
inline CoefficientSequence random_coefficients(const Grid& g, int V, std::uint64_t seed,
                                               double fill = 0.15, double decay = 0.5) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CoefficientSequence s(g, V);
  for (int v = 0; v <= V; ++v) {
    double scale = std::pow(2.0, -decay * v);
    for (auto& z : s.lam[v])
      if (unif(rng) < fill) z = scale * cplx(gauss(rng), gauss(rng));
  }
  return s;
}

}  // namespace varbesov
