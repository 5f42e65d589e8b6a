#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "exponents.hpp"
#include "filterbank.hpp"
#include "grid.hpp"
#include "kernels.hpp"
#include "parallel.hpp"
#include "varlp.hpp"

namespace varbesov {

struct NormResult {
  double value = 0.0;
  DyadicCube argmax;
  std::vector<int> cube_levels;
  std::vector<double> level_sup;  // best cube value per cube level
};

// ---------------------------------------------------------------------------
// shared engine: sup over dyadic cubes of a windowed mixed norm
//
// W[v - level_lo] holds weighted magnitudes on the full grid for level v,
// level_lo <= v <= V. For cube P the window is [max(v_P+ - offset, level_lo),
// V]; cubes whose window is empty contribute zero and are skipped exactly.
// tau != nullptr divides by ||chi_P||_tau, else by the field |P|^{1/p(x)}.
// ---------------------------------------------------------------------------

inline NormResult cube_sup_mixed_norm(const Grid& g,
                                      const std::vector<std::vector<double>>& W,
                                      int level_lo, const VariableExponent& p,
                                      const VariableExponent& q,
                                      const VariableExponent* tau, int cmin, int cmax,
                                      int offset, double tol = lux_tol_default) {
  int V = level_lo + int(W.size()) - 1;
  std::vector<double> pq_full;
  if (!p.is_inf && !q.is_inf) {
    pq_full.resize(g.size());
    for (std::size_t i = 0; i < pq_full.size(); ++i) pq_full[i] = p.vals[i] / q.vals[i];
  }
  NormResult res;
  for (int vP = cmin; vP <= cmax; ++vP) {
    int bottom = std::max(std::max(vP, 0) - offset, level_lo);
    if (bottom > V) continue;
    std::vector<DyadicCube> cubes = cubes_at_level(g, vP);
    std::vector<double> per_cube(cubes.size(), 0.0);
    double chi_cached = (tau && tau->is_const) ? chi_norm(*tau, cubes[0]) : 0.0;
    double measP = std::pow(std::ldexp(1.0, -vP), g.dim);
    parallel_for(cubes.size(), [&](std::size_t ci) {
      const DyadicCube& Q = cubes[ci];
      std::vector<double> pg, qg, pqg;
      if (!p.is_inf) gather_cube(g, Q, p.vals, pg);
      if (!q.is_inf && !q.is_const) gather_cube(g, Q, q.vals, qg);
      if (!pq_full.empty()) gather_cube(g, Q, pq_full, pqg);
      std::vector<double> denom;  // pointwise weight for the p-weight family
      double dscalar = 1.0;
      if (tau) {
        dscalar = tau->is_const ? chi_cached : chi_norm(*tau, Q);
      } else if (!p.is_inf) {
        denom.resize(pg.size());
        double lm = std::log(measP);
        for (std::size_t i = 0; i < pg.size(); ++i) denom[i] = std::exp(lm / pg[i]);
      }
      std::vector<std::vector<double>> win;
      win.reserve(V - bottom + 1);
      for (int v = bottom; v <= V; ++v) {
        std::vector<double> data;
        gather_cube(g, Q, W[v - level_lo], data);
        if (!denom.empty()) {
          for (std::size_t i = 0; i < data.size(); ++i) data[i] /= denom[i];
        } else if (dscalar != 1.0) {
          for (double& x : data) x /= dscalar;
        }
        win.push_back(std::move(data));
      }
      MixedExponents e = make_mixed_exponents(p, q, pg, qg, pqg, g.cell_measure());
      per_cube[ci] = mixed_norm_core(e, win, tol);
    });
    double lvl_best = 0.0;
    std::size_t lvl_arg = 0;
    for (std::size_t ci = 0; ci < per_cube.size(); ++ci)
      if (per_cube[ci] > lvl_best) {
        lvl_best = per_cube[ci];
        lvl_arg = ci;
      }
    res.cube_levels.push_back(vP);
    res.level_sup.push_back(lvl_best);
    if (lvl_best > res.value) {
      res.value = lvl_best;
      res.argmax = cubes[lvl_arg];
    }
  }
  return res;
}

// generic level families (v = 0..V): the tau-normalized norm sups over all
// dyadic cubes, the p-weight abbreviation over |P| <= 1 only
inline double level_family_norm(const Grid& g, const std::vector<std::vector<double>>& W,
                                const VariableExponent& p, const VariableExponent& q,
                                const VariableExponent* tau,
                                double tol = lux_tol_default) {
  int V = int(W.size()) - 1;
  int cmin = tau ? -g.J0 : 0;
  return cube_sup_mixed_norm(g, W, 0, p, q, tau, cmin, V, 0, tol).value;
}

inline std::vector<std::vector<double>> field_magnitudes(const std::vector<Field>& fs) {
  std::vector<std::vector<double>> W;
  W.reserve(fs.size());
  for (const Field& f : fs) W.push_back(magnitudes(f));
  return W;
}

// ---------------------------------------------------------------------------
// Besov-type norms
// ---------------------------------------------------------------------------

struct BesovParams {
  VariableExponent alpha, p, q, tau;
  FilterBank bank;
  double tol = lux_tol_default;
};

inline void validate_besov_params(const Field& f, const BesovParams& prm, bool need_tau) {
  prm.p.require_positive("besov norm: p");
  prm.q.require_positive("besov norm: q");
  if (need_tau) prm.tau.require_positive("besov norm: tau");
  if (prm.alpha.is_inf) throw std::invalid_argument("besov norm: alpha must be finite");
  if (f.grid != prm.bank.grid || f.grid != prm.alpha.grid)
    throw std::invalid_argument("besov norm: grid mismatch");
}

// weighted magnitudes 2^{v alpha(x)} |block_v(x)|
inline std::vector<double> weight_block(const Field& block, const VariableExponent& alpha,
                                        int v) {
  std::vector<double> w(block.a.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] = std::abs(block.a[i]) * std::pow(2.0, v * alpha.vals[i]);
  return w;
}

inline std::vector<std::vector<double>> besov_block_fields(const Field& f,
                                                           const BesovParams& prm) {
  std::vector<std::vector<double>> W;
  W.reserve(prm.bank.V + 1);
  for (int v = 0; v <= prm.bank.V; ++v)
    W.push_back(weight_block(lp_block(f, prm.bank, v), prm.alpha, v));
  return W;
}

inline NormResult besov_type_norm(const Field& f, const BesovParams& prm) {
  validate_besov_params(f, prm, true);
  std::vector<std::vector<double>> W = besov_block_fields(f, prm);
  return cube_sup_mixed_norm(f.grid, W, 0, prm.p, prm.q, &prm.tau, -f.grid.J0, prm.bank.V,
                             0, prm.tol);
}

inline NormResult besov_tilde_norm(const Field& f, const BesovParams& prm) {
  validate_besov_params(f, prm, false);
  std::vector<std::vector<double>> W = besov_block_fields(f, prm);
  return cube_sup_mixed_norm(f.grid, W, 0, prm.p, prm.q, nullptr, -f.grid.J0, prm.bank.V,
                             0, prm.tol);
}

// sup restricted to |P| <= 1 with window starting at v_P
inline NormResult besov_norm_sharp(const Field& f, const BesovParams& prm) {
  validate_besov_params(f, prm, true);
  std::vector<std::vector<double>> W = besov_block_fields(f, prm);
  return cube_sup_mixed_norm(f.grid, W, 0, prm.p, prm.q, &prm.tau, 0, prm.bank.V, 0,
                             prm.tol);
}

// band transfer phi_hat(2^{-v} rho) for any level, including v <= 0
inline Field lp_block_band(const Field& f, const FilterBank& bank, int v) {
  if (v > bank.V) throw std::invalid_argument("lp_block_band: level above V refused");
  Field F = fft_forward(f);
  apply_radial_transfer(F, [&](double rho) { return bank.phi_hat(std::ldexp(rho, -v)); });
  return fft_backward_normalized(F);
}

// window lowered by gamma; the bottom index -gamma carries the low-pass
// Phi(2^{gamma} xi), every other index the band at its scale
inline NormResult besov_norm_star(const Field& f, const BesovParams& prm, int gamma) {
  validate_besov_params(f, prm, true);
  if (gamma < 0 || gamma > f.grid.J0)
    throw std::invalid_argument("besov_norm_star: need 0 <= gamma <= J0");
  std::vector<std::vector<double>> W;
  W.reserve(prm.bank.V + gamma + 1);
  for (int v = -gamma; v <= prm.bank.V; ++v) {
    Field block = v == -gamma ? lp_block_star_bottom(f, prm.bank, gamma)
                              : lp_block_band(f, prm.bank, v);
    W.push_back(weight_block(block, prm.alpha, v));
  }
  int cmax = std::min(prm.bank.V + gamma, f.grid.J);
  return cube_sup_mixed_norm(f.grid, W, -gamma, prm.p, prm.q, &prm.tau, -f.grid.J0, cmax,
                             gamma, prm.tol);
}

// no cube supremum: one mixed norm of the weighted blocks over the whole box
inline double besov_variable_norm(const Field& f, const VariableExponent& alpha,
                                  const VariableExponent& p, const VariableExponent& q,
                                  const FilterBank& bank, double tol = lux_tol_default) {
  p.require_positive("besov_variable_norm");
  q.require_positive("besov_variable_norm");
  std::vector<std::vector<double>> W;
  for (int v = 0; v <= bank.V; ++v)
    W.push_back(weight_block(lp_block(f, bank, v), alpha, v));
  std::vector<double> pq;
  const Grid& g = f.grid;
  if (!p.is_inf && !q.is_inf) {
    pq.resize(g.size());
    for (std::size_t i = 0; i < pq.size(); ++i) pq[i] = p.vals[i] / q.vals[i];
  }
  std::vector<double> pr = p.is_inf ? std::vector<double>{} : p.vals;
  std::vector<double> qr = (q.is_inf || q.is_const) ? std::vector<double>{} : q.vals;
  MixedExponents e = make_mixed_exponents(p, q, pr, qr, pq, g.cell_measure());
  return mixed_norm_core(e, W, tol);
}

// (sum_v ||2^{v alpha} phi_v * f||_{M_u^p}^q)^{1/q}, real 0 < u <= p < inf
inline double besov_morrey_norm(const Field& f, const VariableExponent& alpha, double p,
                                double q, double u, const FilterBank& bank) {
  if (!(u > 0.0) || !(p >= u)) throw std::invalid_argument("besov_morrey_norm: bad u,p");
  double acc = 0.0, best = 0.0;
  for (int v = 0; v <= bank.V; ++v) {
    std::vector<double> w = weight_block(lp_block(f, bank, v), alpha, v);
    Field wf(f.grid);
    for (std::size_t i = 0; i < w.size(); ++i) wf.a[i] = w[i];
    double mv = morrey_norm(u, p, wf);
    if (q == inf)
      best = std::max(best, mv);
    else if (mv > 0.0)
      acc += std::pow(mv, q);
  }
  if (q == inf) return best;
  return acc == 0.0 ? 0.0 : std::pow(acc, 1.0 / q);
}

// sup over x and v of 2^{v(alpha(x) + n(1/tau(x) - 1/p(x)))} |phi_v * f(x)|
inline double besov_pointwise_peak(const Field& f, const BesovParams& prm) {
  validate_besov_params(f, prm, true);
  const Grid& g = f.grid;
  double best = 0.0;
  for (int v = 0; v <= prm.bank.V; ++v) {
    Field block = lp_block(f, prm.bank, v);
    for (std::size_t i = 0; i < block.a.size(); ++i) {
      double expnt = prm.alpha.vals[i] +
                     g.dim * (1.0 / prm.tau.vals[i] - (prm.p.is_inf ? 0.0 : 1.0 / prm.p.vals[i]));
      best = std::max(best, std::abs(block.a[i]) * std::pow(2.0, v * expnt));
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// classical constant-exponent display, independent of the bisection machinery:
// sup_P |P|^{-tau_cl} (sum_{v >= v_P+} 2^{v alpha q} ||(phi_v * f) chi_P||_p^q)^{1/q}
// ---------------------------------------------------------------------------

namespace oracle {

inline double besov_classical_const(const Field& f, const FilterBank& bank, double alpha,
                                    double p, double q, double tau_cl) {
  const Grid& g = f.grid;
  std::vector<std::vector<double>> blocks;
  for (int v = 0; v <= bank.V; ++v) blocks.push_back(magnitudes(lp_block(f, bank, v)));
  double best = 0.0;
  for (int vP = -g.J0; vP <= bank.V; ++vP) {
    double measP = std::pow(std::ldexp(1.0, -vP), g.dim);
    double w = std::pow(measP, -tau_cl);
    for (const DyadicCube& Q : cubes_at_level(g, vP)) {
      double acc = 0.0, sup = 0.0;
      for (int v = Q.v_plus(); v <= bank.V; ++v) {
        double acc_p = 0.0, sup_p = 0.0;
        for_cube_cells(g, Q, [&](std::size_t i) {
          double x = blocks[v][i];
          if (p == inf)
            sup_p = std::max(sup_p, x);
          else if (x != 0.0)
            acc_p += std::pow(x, p);
        });
        double bn = p == inf ? sup_p : std::pow(acc_p * g.cell_measure(), 1.0 / p);
        double term = std::pow(2.0, v * alpha) * bn;
        if (q == inf)
          sup = std::max(sup, term);
        else if (term != 0.0)
          acc += std::pow(term, q);
      }
      double mixed = q == inf ? sup : (acc == 0.0 ? 0.0 : std::pow(acc, 1.0 / q));
      best = std::max(best, w * mixed);
    }
  }
  return best;
}

}  // namespace oracle

}  // namespace varbesov
