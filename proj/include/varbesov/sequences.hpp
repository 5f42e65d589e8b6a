#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "besov.hpp"
#include "exponents.hpp"
#include "filterbank.hpp"
#include "grid.hpp"
#include "parallel.hpp"
#include "varlp.hpp"

namespace varbesov {

// dense coefficients on the dyadic corner lattices, levels 0..V;
// flat order within a level matches cubes_at_level (m0 outer, m1 inner)
struct CoefficientSequence {
  Grid grid;
  int V = 0;
  std::vector<std::vector<cplx>> lam;

  CoefficientSequence() = default;
  CoefficientSequence(const Grid& g, int V_) : grid(g), V(V_) {
    if (V < 0 || V > g.J - 2)
      throw std::invalid_argument("coefficients: need 0 <= V <= J - 2");
    lam.resize(V + 1);
    for (int v = 0; v <= V; ++v) lam[v].assign(level_count(v), cplx(0.0));
  }

  int per_axis(int v) const { return 1 << (grid.J0 + v); }
  std::size_t level_count(int v) const {
    std::size_t n = static_cast<std::size_t>(per_axis(v));
    return grid.dim == 1 ? n : n * n;
  }
  cplx& at(int v, int m0, int m1 = 0) {
    return lam[v][grid.dim == 1 ? m0 : static_cast<std::size_t>(m0) * per_axis(v) + m1];
  }
  cplx at(int v, int m0, int m1 = 0) const {
    return lam[v][grid.dim == 1 ? m0 : static_cast<std::size_t>(m0) * per_axis(v) + m1];
  }
  double max_abs() const {
    double m = 0.0;
    for (const auto& lv : lam)
      for (cplx z : lv) m = std::max(m, std::abs(z));
    return m;
  }
};

inline std::size_t cube_flat_index(const CoefficientSequence& s, const DyadicCube& Q) {
  return s.grid.dim == 1
             ? static_cast<std::size_t>(Q.m[0])
             : static_cast<std::size_t>(Q.m[0]) * s.per_axis(Q.level) + Q.m[1];
}

// ---------------------------------------------------------------------------
// phi-transform pair
// ---------------------------------------------------------------------------

// (S_phi f)_{v,m} = 2^{-vn/2} (phi_v * f)(2^{-v} m), level 0 uses Phi
inline CoefficientSequence phi_transform(const Field& f, const FilterBank& bank) {
  const Grid& g = f.grid;
  if (f.grid != bank.grid) throw std::invalid_argument("phi_transform: grid mismatch");
  CoefficientSequence s(g, bank.V);
  for (int v = 0; v <= bank.V; ++v) {
    Field block = lp_block(f, bank, v);
    double scale = std::pow(std::ldexp(1.0, -v), 0.5 * g.dim);
    int stride = 1 << (g.J - v);
    int n = s.per_axis(v);
    if (g.dim == 1) {
      for (int m = 0; m < n; ++m)
        s.lam[v][m] = scale * block.a[static_cast<std::size_t>(m) * stride];
    } else {
      for (int m0 = 0; m0 < n; ++m0)
        for (int m1 = 0; m1 < n; ++m1)
          s.lam[v][static_cast<std::size_t>(m0) * n + m1] =
              scale * block.a[static_cast<std::size_t>(m0) * stride * g.side() +
                              static_cast<std::size_t>(m1) * stride];
    }
  }
  return s;
}

// T_psi lambda = sum_m lambda_{0,m} Psi(x-m) + sum_{v>=1,m} lambda_{v,m} psi_{v,m};
// realized as corner spike trains shaped by the transfer at each scale,
// accumulated in one spectrum
inline Field inverse_phi_transform(const CoefficientSequence& s, const FilterBank& bank) {
  const Grid& g = s.grid;
  if (g != bank.grid) throw std::invalid_argument("inverse_phi_transform: grid mismatch");
  if (s.V > bank.V) throw std::invalid_argument("inverse_phi_transform: V above bank");
  Field acc(g);
  std::vector<cplx> spectrum(g.size(), cplx(0.0));
  double inv_meas = 1.0 / g.cell_measure();
  for (int v = 0; v <= s.V; ++v) {
    Field spikes(g);
    double scale = std::pow(std::ldexp(1.0, -v), 0.5 * g.dim) * inv_meas;
    int stride = 1 << (g.J - v);
    int n = s.per_axis(v);
    if (g.dim == 1) {
      for (int m = 0; m < n; ++m)
        spikes.a[static_cast<std::size_t>(m) * stride] = s.lam[v][m] * scale;
    } else {
      for (int m0 = 0; m0 < n; ++m0)
        for (int m1 = 0; m1 < n; ++m1)
          spikes.a[static_cast<std::size_t>(m0) * stride * g.side() +
                   static_cast<std::size_t>(m1) * stride] =
              s.lam[v][static_cast<std::size_t>(m0) * n + m1] * scale;
    }
    Field F = fft_forward(spikes);
    int vv = v;
    apply_radial_transfer(F, [&](double rho) { return bank.transfer(vv, rho); });
    for (std::size_t i = 0; i < spectrum.size(); ++i) spectrum[i] += F.a[i];
  }
  Field out(g);
  out.a = std::move(spectrum);
  return fft_backward_normalized(out);
}

// ---------------------------------------------------------------------------
// sequence space norms (step fields fed to the cube-sup engine)
// ---------------------------------------------------------------------------

inline std::vector<std::vector<double>> sequence_step_fields(
    const CoefficientSequence& s, const VariableExponent& alpha) {
  const Grid& g = s.grid;
  std::vector<std::vector<double>> W(s.V + 1);
  for (int v = 0; v <= s.V; ++v) {
    W[v].assign(g.size(), 0.0);
    double half = 0.5 * g.dim * v;  // exponent of 2^{vn/2}
    std::vector<DyadicCube> cubes = cubes_at_level(g, v);
    for (const DyadicCube& Q : cubes) {
      double lam = std::abs(s.lam[v][cube_flat_index(s, Q)]);
      if (lam == 0.0) continue;
      for_cube_cells(g, Q, [&](std::size_t i) {
        W[v][i] = lam * std::pow(2.0, v * alpha.vals[i] + half);
      });
    }
  }
  return W;
}

struct SequenceParams {
  VariableExponent alpha, p, q, tau;
  double tol = lux_tol_default;
};

inline NormResult seq_b_norm(const CoefficientSequence& s, const SequenceParams& prm) {
  prm.p.require_positive("seq_b_norm: p");
  prm.q.require_positive("seq_b_norm: q");
  prm.tau.require_positive("seq_b_norm: tau");
  std::vector<std::vector<double>> W = sequence_step_fields(s, prm.alpha);
  return cube_sup_mixed_norm(s.grid, W, 0, prm.p, prm.q, &prm.tau, -s.grid.J0, s.V, 0,
                             prm.tol);
}

inline NormResult seq_b_tilde_norm(const CoefficientSequence& s,
                                   const SequenceParams& prm) {
  prm.p.require_positive("seq_b_tilde_norm: p");
  prm.q.require_positive("seq_b_tilde_norm: q");
  std::vector<std::vector<double>> W = sequence_step_fields(s, prm.alpha);
  return cube_sup_mixed_norm(s.grid, W, 0, prm.p, prm.q, nullptr, -s.grid.J0, s.V, 0,
                             prm.tol);
}

// ---------------------------------------------------------------------------
// majorant sequence lambda*_{r,d}
// ---------------------------------------------------------------------------

inline CoefficientSequence lambda_star(const CoefficientSequence& s, double r, double d) {
  if (!(r > 0.0) || !(d > 0.0)) throw std::invalid_argument("lambda_star: need r,d > 0");
  const Grid& g = s.grid;
  CoefficientSequence out(g, s.V);
  for (int v = 0; v <= s.V; ++v) {
    int n = s.per_axis(v);
    double l = std::ldexp(1.0, -v);
    double tv = std::ldexp(1.0, v);
    std::vector<double> absr(s.lam[v].size());
    for (std::size_t i = 0; i < absr.size(); ++i)
      absr[i] = std::pow(std::abs(s.lam[v][i]), r);
    double box = g.box();
    parallel_for(s.lam[v].size(), [&](std::size_t mi) {
      double acc = 0.0;
      if (g.dim == 1) {
        double ym = double(mi) * l;
        for (int h = 0; h < n; ++h) {
          if (absr[h] == 0.0) continue;
          double dx = std::abs(h * l - ym);
          dx = std::min(dx, box - dx);
          acc += absr[h] / std::pow(1.0 + tv * dx, d);
        }
      } else {
        int m0 = int(mi) / n, m1 = int(mi) % n;
        double y0 = m0 * l, y1 = m1 * l;
        for (int h0 = 0; h0 < n; ++h0) {
          double dx0 = std::abs(h0 * l - y0);
          dx0 = std::min(dx0, box - dx0);
          for (int h1 = 0; h1 < n; ++h1) {
            std::size_t hi = static_cast<std::size_t>(h0) * n + h1;
            if (absr[hi] == 0.0) continue;
            double dx1 = std::abs(h1 * l - y1);
            dx1 = std::min(dx1, box - dx1);
            acc += absr[hi] / std::pow(1.0 + tv * std::hypot(dx0, dx1), d);
          }
        }
      }
      // the h = m term alone contributes |lambda_m|, so that is a floor
      out.lam[v][mi] = std::max(std::pow(acc, 1.0 / r), std::abs(s.lam[v][mi]));
    });
  }
  return out;
}

// ---------------------------------------------------------------------------
// sup / inf sequences of a field
// ---------------------------------------------------------------------------

// sup_{v,m}(f) = 2^{-vn/2} max over Q_{v,m} of |phi_v * f|
inline CoefficientSequence sup_sequence(const Field& f, const FilterBank& bank) {
  const Grid& g = f.grid;
  CoefficientSequence s(g, bank.V);
  for (int v = 0; v <= bank.V; ++v) {
    std::vector<double> mag = magnitudes(lp_block(f, bank, v));
    double scale = std::pow(std::ldexp(1.0, -v), 0.5 * g.dim);
    std::vector<DyadicCube> cubes = cubes_at_level(g, v);
    parallel_for(cubes.size(), [&](std::size_t ci) {
      double best = 0.0;
      for_cube_cells(g, cubes[ci], [&](std::size_t i) { best = std::max(best, mag[i]); });
      s.lam[v][cube_flat_index(s, cubes[ci])] = best * scale;
    });
  }
  return s;
}

// inf_{v,m,gamma}(f) = 2^{-vn/2} max over the level-(v+gamma) subcubes of Q_{v,m}
// of the cell minimum of |phi_v * f|; needs V + gamma <= J
inline CoefficientSequence inf_sequence(const Field& f, const FilterBank& bank,
                                        int gamma) {
  const Grid& g = f.grid;
  if (gamma < 0 || bank.V + gamma > g.J)
    throw std::invalid_argument("inf_sequence: need gamma >= 0 and V + gamma <= J");
  CoefficientSequence s(g, bank.V);
  int sub_per_axis = 1 << gamma;
  for (int v = 0; v <= bank.V; ++v) {
    std::vector<double> mag = magnitudes(lp_block(f, bank, v));
    double scale = std::pow(std::ldexp(1.0, -v), 0.5 * g.dim);
    std::vector<DyadicCube> cubes = cubes_at_level(g, v);
    parallel_for(cubes.size(), [&](std::size_t ci) {
      const DyadicCube& Q = cubes[ci];
      double best = 0.0;
      for (int s0 = 0; s0 < sub_per_axis; ++s0) {
        for (int s1 = 0; s1 < (g.dim == 2 ? sub_per_axis : 1); ++s1) {
          DyadicCube sub(v + gamma, Q.m[0] * sub_per_axis + s0,
                         g.dim == 2 ? Q.m[1] * sub_per_axis + s1 : 0);
          double mn = std::numeric_limits<double>::infinity();
          for_cube_cells(g, sub, [&](std::size_t i) { mn = std::min(mn, mag[i]); });
          best = std::max(best, mn);
        }
      }
      s.lam[v][cube_flat_index(s, cubes[ci])] = best * scale;
    });
  }
  return s;
}

// ---------------------------------------------------------------------------
// coefficient bound: |lambda_{v,m}| <= c 2^{-v(alpha(x)+n/2)} ||lambda||
//                    * (b family: ||chi_{v,m}||_tau / ||chi_{v,m}||_p)
// returns the smallest admissible c over all v, m and worst x in the cube
// ---------------------------------------------------------------------------

inline double coefficient_bound_constant(const CoefficientSequence& s,
                                         const SequenceParams& prm, bool tilde) {
  const Grid& g = s.grid;
  double norm = tilde ? seq_b_tilde_norm(s, prm).value : seq_b_norm(s, prm).value;
  if (norm == 0.0) return 0.0;
  double worst = 0.0;
  for (int v = 0; v <= s.V; ++v) {
    double half = 0.5 * g.dim * v;
    std::vector<DyadicCube> cubes = cubes_at_level(g, v);
    std::vector<double> cs(cubes.size(), 0.0);
    parallel_for(cubes.size(), [&](std::size_t ci) {
      const DyadicCube& Q = cubes[ci];
      double lam = std::abs(s.lam[v][cube_flat_index(s, Q)]);
      if (lam == 0.0) return;
      double amax = -inf;
      for_cube_cells(g, Q, [&](std::size_t i) { amax = std::max(amax, prm.alpha.vals[i]); });
      // the bound must hold at every x in Q; x maximizing alpha is the worst
      double rhs = std::pow(2.0, -(v * amax + half)) * norm;
      if (!tilde) rhs *= chi_norm(prm.tau, Q) / chi_norm(prm.p, Q);
      cs[ci] = lam / rhs;
    });
    for (double c : cs) worst = std::max(worst, c);
  }
  return worst;
}

}  // namespace varbesov
