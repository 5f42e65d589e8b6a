#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "exponents.hpp"
#include "grid.hpp"
#include "parallel.hpp"

namespace varbesov {

inline constexpr double lux_tol_default = 1e-10;

// ---------------------------------------------------------------------------
// core: modular and Luxemburg norm over a flat slice of magnitudes
// ---------------------------------------------------------------------------

// View of |f| samples with matching exponent samples; p == nullptr means p == inf.
struct LpSlice {
  const double* absf = nullptr;
  const double* p = nullptr;
  std::size_t n = 0;
  double meas = 0.0;
  double p_lo = 0.0;  // ignored when p == nullptr

  bool p_inf() const { return p == nullptr; }
};

inline double slice_max(const LpSlice& s) {
  double m = 0.0;
  for (std::size_t i = 0; i < s.n; ++i) m = std::max(m, s.absf[i]);
  return m;
}

// rho_p(f/lambda) <= bound, early exit once the partial sum passes bound
inline bool modular_leq(const LpSlice& s, double lambda, double bound = 1.0) {
  if (s.p_inf()) return slice_max(s) <= lambda * bound;
  double acc = 0.0;
  for (std::size_t i = 0; i < s.n; ++i) {
    if (s.absf[i] == 0.0) continue;
    acc += std::pow(s.absf[i] / lambda, s.p[i]) * s.meas;
    if (acc > bound) return false;
  }
  return true;
}

inline double modular_value(const LpSlice& s) {
  if (s.p_inf()) return slice_max(s) <= 1.0 ? 0.0 : inf;
  double acc = 0.0;
  for (std::size_t i = 0; i < s.n; ++i)
    if (s.absf[i] != 0.0) acc += std::pow(s.absf[i], s.p[i]) * s.meas;
  return acc;
}

// bisect the monotone predicate modular_leq on a verified bracket; returns the
// upper end, so modular(f/result) <= 1 holds
inline double lux_bisect(const LpSlice& s, double lo, double hi, double tol) {
  for (int iter = 0; iter < 250 && hi - lo > tol * hi; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (modular_leq(s, mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

inline double luxemburg_core(const LpSlice& s, double tol = lux_tol_default) {
  double M = slice_max(s);
  if (M == 0.0) return 0.0;
  if (s.p_inf()) return M;
  double lo, hi;
  if (modular_leq(s, M)) {
    hi = M;
    lo = 0.0;
    for (double t = 0.5 * M; t > 1e-300; t *= 0.5) {
      if (modular_leq(s, t)) {
        hi = t;
      } else {
        lo = t;
        break;
      }
    }
  } else {
    lo = M;
    hi = M;
    do {
      hi *= 2.0;
      if (hi > 1e300) throw std::runtime_error("luxemburg: bracket overflow");
    } while (!modular_leq(s, hi));
    lo = 0.5 * hi > lo ? 0.5 * hi : lo;
  }
  return lux_bisect(s, lo, hi, tol);
}

// warm variant: expands the hint bracket outward until valid, then bisects
inline double luxemburg_core_hint(const LpSlice& s, double lo, double hi, double tol) {
  double M = slice_max(s);
  if (M == 0.0) return 0.0;
  if (s.p_inf()) return M;
  if (!(hi > 0.0)) return luxemburg_core(s, tol);
  while (!modular_leq(s, hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw std::runtime_error("luxemburg: bracket overflow");
  }
  if (lo < 0.0) lo = 0.0;
  return lux_bisect(s, lo, hi, tol);
}

// ---------------------------------------------------------------------------
// public single-level API
// ---------------------------------------------------------------------------

struct ModularReport {
  double value = 0.0;
  bool finite = true;
  bool leq_one = true;
};

inline LpSlice full_slice(const VariableExponent& p, const std::vector<double>& absf,
                          double meas) {
  LpSlice s;
  s.absf = absf.data();
  s.p = p.is_inf ? nullptr : p.vals.data();
  s.n = absf.size();
  s.meas = meas;
  s.p_lo = p.lo;
  return s;
}

inline ModularReport modular(const VariableExponent& p, const Field& f) {
  p.require_positive("modular");
  if (p.grid != f.grid) throw std::invalid_argument("modular: grid mismatch");
  std::vector<double> absf = magnitudes(f);
  double v = modular_value(full_slice(p, absf, f.grid.cell_measure()));
  ModularReport r;
  r.value = v;
  r.finite = std::isfinite(v);
  r.leq_one = v <= 1.0;
  return r;
}

inline double luxemburg_norm(const VariableExponent& p, const Field& f,
                             double tol = lux_tol_default) {
  p.require_positive("luxemburg_norm");
  if (p.grid != f.grid) throw std::invalid_argument("luxemburg_norm: grid mismatch");
  std::vector<double> absf = magnitudes(f);
  return luxemburg_core(full_slice(p, absf, f.grid.cell_measure()), tol);
}

// ---------------------------------------------------------------------------
// mixed norm core over level slices sharing one region
// ---------------------------------------------------------------------------

// Exponent data restricted to a region; p == nullptr means p == inf, q ==
// nullptr with q_const_val == inf means q == inf.
struct MixedExponents {
  const double* p = nullptr;
  const double* q = nullptr;
  const double* p_over_q = nullptr;  // nullptr when p == inf
  double meas = 0.0;
  double p_lo = 0.0, q_lo = 0.0, q_hi = 0.0, pq_lo = 0.0;
  bool q_const = false;
  double q_const_val = 0.0;

  bool p_inf() const { return p == nullptr; }
  bool q_inf() const { return q_const && q_const_val == inf; }
};

namespace detail {

// per-level warm-start state for the variable-q outer bisection
struct WarmLevel {
  double mu = -1.0;
  double t = 0.0;
  std::vector<double> gq;  // |f_i|^{q_i}, built once
};

// t_v(mu) = || |f_v/mu|^{q} ||_{p/q}; exact max form when p == inf
inline double inner_block_norm(const MixedExponents& e, const std::vector<double>& absf,
                               WarmLevel& w, double mu, std::vector<double>& scratch,
                               double tol) {
  std::size_t n = absf.size();
  if (w.gq.empty()) {
    w.gq.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      w.gq[i] = absf[i] == 0.0 ? 0.0 : std::pow(absf[i], e.q[i]);
  }
  if (e.p_inf()) {
    double m = 0.0;
    double lmu = std::log(mu);
    for (std::size_t i = 0; i < n; ++i)
      if (w.gq[i] != 0.0) m = std::max(m, w.gq[i] * std::exp(-e.q[i] * lmu));
    return m;
  }
  scratch.resize(n);
  double lmu = std::log(mu);
  for (std::size_t i = 0; i < n; ++i)
    scratch[i] = w.gq[i] == 0.0 ? 0.0 : w.gq[i] * std::exp(-e.q[i] * lmu);
  LpSlice s;
  s.absf = scratch.data();
  s.p = e.p_over_q;
  s.n = n;
  s.meas = e.meas;
  s.p_lo = e.pq_lo;
  double t;
  if (w.mu > 0.0 && w.t > 0.0) {
    double r = w.mu / mu;
    double a = w.t * std::min(std::pow(r, e.q_lo), std::pow(r, e.q_hi));
    double b = w.t * std::max(std::pow(r, e.q_lo), std::pow(r, e.q_hi));
    t = luxemburg_core_hint(s, a * 0.999999, b * 1.000001, tol);
  } else {
    t = luxemburg_core(s, tol);
  }
  w.mu = mu;
  w.t = t;
  return t;
}

}  // namespace detail

// levels[v] = scaled magnitudes of level v on the shared region
inline double mixed_norm_core(const MixedExponents& e,
                              const std::vector<std::vector<double>>& levels,
                              double tol = lux_tol_default) {
  if (levels.empty()) return 0.0;
  std::size_t n = levels[0].size();
  auto level_slice = [&](std::size_t v) {
    LpSlice s;
    s.absf = levels[v].data();
    s.p = e.p;
    s.n = n;
    s.meas = e.meas;
    s.p_lo = e.p_lo;
    return s;
  };

  if (e.q_inf()) {
    double m = 0.0;
    for (std::size_t v = 0; v < levels.size(); ++v)
      m = std::max(m, luxemburg_core(level_slice(v), tol));
    return m;
  }

  if (e.q_const) {
    double qc = e.q_const_val;
    double acc = 0.0;
    for (std::size_t v = 0; v < levels.size(); ++v) {
      double b = luxemburg_core(level_slice(v), tol);
      if (b > 0.0) acc += std::pow(b, qc);
    }
    return acc == 0.0 ? 0.0 : std::pow(acc, 1.0 / qc);
  }

  // variable q: outer bisection on mu with warm-started inner blocks
  double base = 0.0;
  for (std::size_t v = 0; v < levels.size(); ++v)
    base = std::max(base, luxemburg_core(level_slice(v), tol));
  if (base == 0.0) return 0.0;
  double inner_tol = std::min(tol, 1e-12);
  std::vector<detail::WarmLevel> warm(levels.size());
  std::vector<double> scratch;
  auto admissible = [&](double mu) {
    double acc = 0.0;
    for (std::size_t v = 0; v < levels.size(); ++v) {
      acc += detail::inner_block_norm(e, levels[v], warm[v], mu, scratch, inner_tol);
      if (acc > 1.0) return false;
    }
    return acc <= 1.0;
  };
  double lo = base;
  double hi = base * std::pow(double(levels.size()), 1.0 / e.q_lo);
  if (admissible(lo)) return lo;
  while (!admissible(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw std::runtime_error("mixed_norm: bracket overflow");
  }
  for (int iter = 0; iter < 250 && hi - lo > tol * hi; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (admissible(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

// gather helpers shared by the cube engines
inline void gather_cube(const Grid& g, const DyadicCube& Q, const std::vector<double>& src,
                        std::vector<double>& dst) {
  dst.clear();
  for_cube_cells(g, Q, [&](std::size_t i) { dst.push_back(src[i]); });
}

inline MixedExponents make_mixed_exponents(const VariableExponent& p,
                                           const VariableExponent& q,
                                           const std::vector<double>& p_region,
                                           const std::vector<double>& q_region,
                                           const std::vector<double>& pq_region,
                                           double meas) {
  MixedExponents e;
  e.meas = meas;
  e.p_lo = p.lo;
  e.q_lo = q.lo;
  e.q_hi = q.hi;
  if (q.is_inf) {
    e.q_const = true;
    e.q_const_val = inf;
  } else if (q.is_const) {
    e.q_const = true;
    e.q_const_val = q.lo;
  } else {
    e.q = q_region.data();
  }
  if (!p.is_inf) {
    e.p = p_region.data();
    if (!q.is_inf) {
      e.p_over_q = pq_region.data();
      e.pq_lo = p.lo / q.hi;
    }
  }
  return e;
}

// ---------------------------------------------------------------------------
// public mixed norm over whole-grid level fields
// ---------------------------------------------------------------------------

inline double mixed_norm(const VariableExponent& p, const VariableExponent& q,
                         const std::vector<Field>& fs, double tol = lux_tol_default) {
  p.require_positive("mixed_norm");
  q.require_positive("mixed_norm");
  if (fs.empty()) return 0.0;
  const Grid& g = fs[0].grid;
  if (p.grid != g || q.grid != g) throw std::invalid_argument("mixed_norm: grid mismatch");
  if (!q.is_inf && q.hi == inf)
    throw std::invalid_argument("mixed_norm: q must be inf globally or finite");
  std::vector<std::vector<double>> levels(fs.size());
  for (std::size_t v = 0; v < fs.size(); ++v) {
    if (fs[v].grid != g) throw std::invalid_argument("mixed_norm: grid mismatch");
    levels[v] = magnitudes(fs[v]);
  }
  std::vector<double> pq;
  if (!p.is_inf && !q.is_inf) {
    pq.resize(g.size());
    for (std::size_t i = 0; i < pq.size(); ++i) pq[i] = p.vals[i] / q.vals[i];
  }
  MixedExponents e = make_mixed_exponents(p, q, p.vals, q.vals, pq, g.cell_measure());
  return mixed_norm_core(e, levels, tol);
}

// direct realization of the iterated infimum, for cross-checks; q finite
inline double mixed_norm_infform(const VariableExponent& p, const VariableExponent& q,
                                 const std::vector<Field>& fs, double tol = 1e-8) {
  p.require_positive("mixed_norm_infform");
  q.require_positive("mixed_norm_infform");
  if (fs.empty()) return 0.0;
  const Grid& g = fs[0].grid;
  if (q.is_inf) {
    double m = 0.0;
    for (const Field& f : fs) m = std::max(m, luxemburg_norm(p, f, tol));
    return m;
  }
  std::vector<std::vector<double>> levels(fs.size());
  for (std::size_t v = 0; v < fs.size(); ++v) levels[v] = magnitudes(fs[v]);
  double meas = g.cell_measure();

  // lambda_v(mu) = inf{ lam : rho_p(f_v / (mu lam^{1/q})) <= 1 } by bisection
  auto level_lambda = [&](std::size_t v, double mu) {
    const std::vector<double>& absf = levels[v];
    auto ok = [&](double lam) {
      if (p.is_inf) {
        for (std::size_t i = 0; i < absf.size(); ++i)
          if (absf[i] > mu * std::pow(lam, 1.0 / q.vals[i])) return false;
        return true;
      }
      double acc = 0.0;
      for (std::size_t i = 0; i < absf.size(); ++i) {
        if (absf[i] == 0.0) continue;
        acc += std::pow(absf[i] / (mu * std::pow(lam, 1.0 / q.vals[i])), p.vals[i]) * meas;
        if (acc > 1.0) return false;
      }
      return true;
    };
    double hi = 1.0;
    while (!ok(hi)) {
      hi *= 4.0;
      if (hi > 1e300) throw std::runtime_error("mixed_norm_infform: overflow");
    }
    double lo = 0.0;
    for (int iter = 0; iter < 200 && hi - lo > tol * hi + 1e-300; ++iter) {
      double mid = 0.5 * (lo + hi);
      if (ok(mid))
        hi = mid;
      else
        lo = mid;
    }
    return hi;
  };

  auto admissible = [&](double mu) {
    double acc = 0.0;
    for (std::size_t v = 0; v < levels.size(); ++v) {
      acc += level_lambda(v, mu);
      if (acc > 1.0) return false;
    }
    return acc <= 1.0;
  };

  double base = 0.0;
  for (std::size_t v = 0; v < levels.size(); ++v) {
    LpSlice s;
    std::vector<double> dummy;
    s.absf = levels[v].data();
    s.p = p.is_inf ? nullptr : p.vals.data();
    s.n = levels[v].size();
    s.meas = meas;
    s.p_lo = p.lo;
    base = std::max(base, luxemburg_core(s, tol));
  }
  if (base == 0.0) return 0.0;
  double lo = base, hi = base * std::pow(double(levels.size()), 1.0 / q.lo);
  if (admissible(lo)) return lo;
  while (!admissible(hi)) {
    lo = hi;
    hi *= 2.0;
  }
  for (int iter = 0; iter < 200 && hi - lo > tol * hi; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (admissible(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

// ---------------------------------------------------------------------------
// indicator norms and cube-sup spaces
// ---------------------------------------------------------------------------

inline double chi_norm(const VariableExponent& p, const DyadicCube& P) {
  p.require_positive("chi_norm");
  const Grid& g = p.grid;
  if (p.is_inf) return 1.0;
  std::vector<double> ones, pr;
  gather_cube(g, P, std::vector<double>(g.size(), 1.0), ones);
  gather_cube(g, P, p.vals, pr);
  LpSlice s;
  s.absf = ones.data();
  s.p = pr.data();
  s.n = ones.size();
  s.meas = g.cell_measure();
  s.p_lo = p.lo;
  return luxemburg_core(s);
}

// sup over dyadic |P| >= 1 of || f chi_P / ||chi_P||_tau ||_p
inline double lp_tau_norm(const VariableExponent& p, const VariableExponent& tau,
                          const Field& f, double tol = lux_tol_default) {
  p.require_positive("lp_tau_norm");
  tau.require_positive("lp_tau_norm");
  const Grid& g = f.grid;
  std::vector<double> absf = magnitudes(f);
  double best = 0.0;
  for (int v = -g.J0; v <= 0; ++v) {
    std::vector<DyadicCube> cubes = cubes_at_level(g, v);
    std::vector<double> per_cube(cubes.size(), 0.0);
    parallel_for(cubes.size(), [&](std::size_t ci) {
      const DyadicCube& Q = cubes[ci];
      double cn = chi_norm(tau, Q);
      std::vector<double> fa, pr;
      gather_cube(g, Q, absf, fa);
      for (double& x : fa) x /= cn;
      LpSlice s;
      s.n = fa.size();
      s.absf = fa.data();
      s.meas = g.cell_measure();
      s.p_lo = p.lo;
      std::vector<double> pg;
      if (!p.is_inf) {
        gather_cube(g, Q, p.vals, pg);
        s.p = pg.data();
      }
      per_cube[ci] = luxemburg_core(s, tol);
    });
    for (double x : per_cube) best = std::max(best, x);
  }
  return best;
}

// sup over dyadic |P| = 1 of || f chi_P ||_p
inline double lp_tilde_norm(const VariableExponent& p, const Field& f,
                            double tol = lux_tol_default) {
  p.require_positive("lp_tilde_norm");
  const Grid& g = f.grid;
  std::vector<double> absf = magnitudes(f);
  std::vector<DyadicCube> cubes = cubes_at_level(g, 0);
  std::vector<double> per_cube(cubes.size(), 0.0);
  parallel_for(cubes.size(), [&](std::size_t ci) {
    std::vector<double> fa, pg;
    gather_cube(g, cubes[ci], absf, fa);
    LpSlice s;
    s.n = fa.size();
    s.absf = fa.data();
    s.meas = g.cell_measure();
    s.p_lo = p.lo;
    if (!p.is_inf) {
      gather_cube(g, cubes[ci], p.vals, pg);
      s.p = pg.data();
    }
    per_cube[ci] = luxemburg_core(s, tol);
  });
  double best = 0.0;
  for (double x : per_cube) best = std::max(best, x);
  return best;
}

// modular-form criterion value: sup over |P| >= 1 of || |f/||chi_P||_tau|^q chi_P ||_{p/q}
inline double lp_tau_modular_form(const VariableExponent& p, const VariableExponent& q,
                                  const VariableExponent& tau, const Field& f,
                                  double tol = lux_tol_default) {
  const Grid& g = f.grid;
  std::vector<double> absf = magnitudes(f);
  double best = 0.0;
  for (int v = -g.J0; v <= 0; ++v) {
    for (const DyadicCube& Q : cubes_at_level(g, v)) {
      double cn = chi_norm(tau, Q);
      std::vector<double> fa, qg, pqg;
      gather_cube(g, Q, absf, fa);
      gather_cube(g, Q, q.vals, qg);
      for (std::size_t i = 0; i < fa.size(); ++i)
        fa[i] = fa[i] == 0.0 ? 0.0 : std::pow(fa[i] / cn, qg[i]);
      LpSlice s;
      s.n = fa.size();
      s.absf = fa.data();
      s.meas = g.cell_measure();
      if (!p.is_inf) {
        pqg.resize(fa.size());
        std::vector<double> pg;
        gather_cube(g, Q, p.vals, pg);
        for (std::size_t i = 0; i < fa.size(); ++i) pqg[i] = pg[i] / qg[i];
        s.p = pqg.data();
        s.p_lo = p.lo / q.hi;
      }
      best = std::max(best, p.is_inf ? slice_max(s) : luxemburg_core(s, tol));
    }
  }
  return best;
}

// Morrey norm, real exponents 0 < u <= p: sup over all dyadic cubes of
// |B|^{1/p - 1/u} (integral_B |f|^u)^{1/u}
inline double morrey_norm(double u, double p, const Field& f) {
  if (!(u > 0.0) || !(p >= u) || !std::isfinite(p))
    throw std::invalid_argument("morrey_norm: need 0 < u <= p < inf");
  const Grid& g = f.grid;
  std::vector<double> absf = magnitudes(f);
  double best = 0.0;
  for (int v = -g.J0; v <= g.J; ++v) {
    std::vector<DyadicCube> cubes = cubes_at_level(g, v);
    std::vector<double> per_cube(cubes.size(), 0.0);
    double measB = std::pow(std::ldexp(1.0, -v), g.dim);
    double w = std::pow(measB, 1.0 / p - 1.0 / u);
    parallel_for(cubes.size(), [&](std::size_t ci) {
      double acc = 0.0;
      for_cube_cells(g, cubes[ci], [&](std::size_t i) {
        if (absf[i] != 0.0) acc += std::pow(absf[i], u);
      });
      per_cube[ci] = w * std::pow(acc * g.cell_measure(), 1.0 / u);
    });
    for (double x : per_cube) best = std::max(best, x);
  }
  return best;
}

// ---------------------------------------------------------------------------
// constant-exponent closed forms, independent of the bisection machinery
// ---------------------------------------------------------------------------

namespace oracle {

inline double lp_norm_const(double p, const std::vector<double>& absf, double meas) {
  if (p == inf) {
    double m = 0.0;
    for (double x : absf) m = std::max(m, x);
    return m;
  }
  double acc = 0.0;
  for (double x : absf)
    if (x != 0.0) acc += std::pow(x, p);
  return std::pow(acc * meas, 1.0 / p);
}

inline double lp_norm_const(double p, const Field& f) {
  return lp_norm_const(p, magnitudes(f), f.grid.cell_measure());
}

inline double mixed_norm_const(double p, double q, const std::vector<Field>& fs) {
  std::vector<double> b(fs.size());
  for (std::size_t v = 0; v < fs.size(); ++v) b[v] = lp_norm_const(p, fs[v]);
  if (q == inf) {
    double m = 0.0;
    for (double x : b) m = std::max(m, x);
    return m;
  }
  double acc = 0.0;
  for (double x : b)
    if (x != 0.0) acc += std::pow(x, q);
  return acc == 0.0 ? 0.0 : std::pow(acc, 1.0 / q);
}

inline double chi_norm_const(double p, const Grid& g, const DyadicCube& Q) {
  if (p == inf) return 1.0;
  double measQ = std::pow(std::ldexp(1.0, -Q.level), g.dim);
  return std::pow(measQ, 1.0 / p);
}

}  // namespace oracle

}  // namespace varbesov
