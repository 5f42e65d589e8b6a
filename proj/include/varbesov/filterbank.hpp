#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fft.hpp"
#include "grid.hpp"

namespace varbesov {

// Smooth ramp: T == 0 for t <= 0, T == 1 for t >= 1, strictly monotone between.
inline double profile_s(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
inline double profile_T(double t) {
  double a = profile_s(t), b = profile_s(1.0 - t);
  return a / (a + b);
}

// Cutoff pair (t1, t2). The low-pass symbol is u(rho) = T((t2-rho)/(t2-t1)),
// identically 1 for rho <= t1 and 0 for rho >= t2. The band symbol
// sqrt(u(rho)^2 - u(2 rho)^2) then lives on (t1/2, t2) and the squares
// telescope, which needs t1 >= 1 (support), t1 < 6/5 and t2 > 5/3
// (positivity on the mandated annulus), t2 <= 2 (support).
struct BankProfile {
  double t1 = 11.0 / 10.0;
  double t2 = 19.0 / 10.0;
};

struct FilterBank {
  Grid grid;
  BankProfile prof;
  int V = 0;
  double low_margin = 0.0;   // min of Phi_hat on [0, 5/3]
  double band_margin = 0.0;  // min of phi_hat on [3/5, 5/3]

  double u(double rho) const {
    if (rho <= prof.t1) return 1.0;
    if (rho >= prof.t2) return 0.0;
    return profile_T((prof.t2 - rho) / (prof.t2 - prof.t1));
  }
  double Phi_hat(double rho) const { return u(rho); }
  double phi_hat(double rho) const {
    double a = u(rho), b = u(2.0 * rho);
    return std::sqrt(std::max(0.0, a * a - b * b));
  }
  // level transfer at |xi| = rho; v == 0 is the low-pass, v < 0 shrinks the annulus
  double transfer(int v, double rho) const {
    if (v == 0) return Phi_hat(rho);
    return phi_hat(std::ldexp(rho, -v));
  }
  // bottom symbol of the shifted-window family: Phi_hat(2^gamma rho)
  double star_bottom(int gamma, double rho) const { return Phi_hat(std::ldexp(rho, gamma)); }

  // largest |xi| on which the squares sum to 1 exactly
  double resolvable_band() const { return prof.t1 * std::ldexp(1.0, V); }
};

inline FilterBank build_filterbank(const Grid& g, BankProfile prof = {}) {
  if (g.J < 2) throw std::invalid_argument("filterbank: need J >= 2 so that V >= 0");
  if (!(prof.t1 >= 1.0 && prof.t1 < 6.0 / 5.0))
    throw std::invalid_argument("filterbank: t1 must lie in [1, 6/5)");
  if (!(prof.t2 > 5.0 / 3.0 && prof.t2 <= 2.0))
    throw std::invalid_argument("filterbank: t2 must lie in (5/3, 2]");
  FilterBank b;
  b.grid = g;
  b.prof = prof;
  b.V = g.max_level();
  b.low_margin = b.Phi_hat(5.0 / 3.0);
  b.band_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 256; ++i) {
    double rho = 3.0 / 5.0 + (5.0 / 3.0 - 3.0 / 5.0) * i / 256.0;
    b.band_margin = std::min(b.band_margin, b.phi_hat(rho));
  }
  if (!(b.low_margin > 0.0) || !(b.band_margin > 0.0))
    throw std::invalid_argument("filterbank: positivity margin vanished");
  return b;
}

// phi_v * f via the spectral transfer; v ranges over levels <= V, negative allowed
inline Field lp_block(const Field& f, const FilterBank& bank, int v) {
  if (f.grid != bank.grid) throw std::invalid_argument("lp_block: grid mismatch");
  if (v > bank.V) throw std::invalid_argument("lp_block: level above V refused");
  Field F = fft_forward(f);
  apply_radial_transfer(F, [&](double rho) { return bank.transfer(v, rho); });
  return fft_backward_normalized(F);
}

inline Field lp_block_star_bottom(const Field& f, const FilterBank& bank, int gamma) {
  if (f.grid != bank.grid) throw std::invalid_argument("lp_block: grid mismatch");
  Field F = fft_forward(f);
  apply_radial_transfer(F, [&](double rho) { return bank.star_bottom(gamma, rho); });
  return fft_backward_normalized(F);
}

// max over resolvable modes of |Phi_hat^2 + sum_v phi_hat_v^2 - 1|
inline double calderon_residual(const FilterBank& bank) {
  const Grid& g = bank.grid;
  double band = bank.resolvable_band();
  double worst = 0.0;
  auto probe = [&](double rho) {
    if (rho > band) return;
    double s = bank.transfer(0, rho) * bank.transfer(0, rho);
    for (int v = 1; v <= bank.V; ++v) {
      double t = bank.transfer(v, rho);
      s += t * t;
    }
    worst = std::max(worst, std::abs(s - 1.0));
  };
  if (g.dim == 1) {
    for (int k = 0; k < g.side(); ++k) probe(g.freq_abs(k));
  } else {
    for (int kx = 0; kx < g.side(); ++kx)
      for (int ky = 0; ky < g.side(); ++ky) probe(g.freq_abs(kx, ky));
  }
  return worst;
}

// sum_{v=0..V} psi_v * phi_v * f with psi == phi; identity on the resolvable band
inline Field reconstruct_blocks(const Field& f, const FilterBank& bank) {
  Field F = fft_forward(f);
  apply_radial_transfer(F, [&](double rho) {
    double s = bank.transfer(0, rho) * bank.transfer(0, rho);
    for (int v = 1; v <= bank.V; ++v) {
      double t = bank.transfer(v, rho);
      s += t * t;
    }
    return s;
  });
  return fft_backward_normalized(F);
}

// true when the spectrum vanishes outside the resolvable band
inline bool is_resolvable(const Field& f, const FilterBank& bank, double tol = 0.0) {
  Field F = fft_forward(f);
  const Grid& g = f.grid;
  double band = bank.resolvable_band();
  double cap = tol * f.grid.size();
  auto bad = [&](double rho, cplx val) { return rho > band && std::abs(val) > cap; };
  if (g.dim == 1) {
    for (int k = 0; k < g.side(); ++k)
      if (bad(g.freq_abs(k), F.a[k])) return false;
  } else {
    for (int kx = 0; kx < g.side(); ++kx)
      for (int ky = 0; ky < g.side(); ++ky)
        if (bad(g.freq_abs(kx, ky), F.a[g.index(kx, ky)])) return false;
  }
  return true;
}

}  // namespace varbesov
