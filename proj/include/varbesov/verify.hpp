#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "atoms.hpp"
#include "besov.hpp"
#include "corpus.hpp"
#include "exponents.hpp"
#include "filterbank.hpp"
#include "grid.hpp"
#include "kernels.hpp"
#include "sequences.hpp"
#include "varlp.hpp"

namespace varbesov {

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  double measured = 0.0;
  std::string note;
};

struct VerifyOptions {
  std::uint64_t seed = 1234;
};

// pinned tolerances and caps for the whole battery
namespace checks {
inline constexpr double kCalderonTol = 1e-12;
inline constexpr double kReconTol = 1e-6;
inline constexpr double kOracleTol = 1e-8;
inline constexpr double kExactTol = 1e-10;
inline constexpr double kUnitBallSlack = 1e-9;
inline constexpr double kBracketSpreadCap = 2.0;   // equivalence-bracket stability
inline constexpr double kLooseSpreadCap = 4.0;     // estimates outside the pinned set
inline constexpr double kConstantCap = 64.0;       // one-sided embedding constants
inline constexpr double kFrameCap = 10.0;          // analysis/norm frame bracket
inline constexpr double kPairAgreeCap = 4.0;       // two banks / two atom families
}  // namespace checks

inline std::string fmt_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.5g", x);
  return buf;
}

inline double value_spread(const std::vector<double>& xs) {
  if (xs.empty()) return inf;
  double lo = inf, hi = 0.0;
  for (double x : xs) {
    if (!std::isfinite(x) || x <= 0.0) return inf;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  return hi / lo;
}

inline std::string join_nums(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += fmt_num(xs[i]);
  }
  return s;
}

// kernel whose action under convolve() is the radial spectral multiplier t
template <typename Transfer>
inline Field kernel_from_transfer(const Grid& g, Transfer&& t) {
  Field spec(g);
  double inv_meas = 1.0 / g.cell_measure();
  if (g.dim == 1) {
    for (int k = 0; k < g.side(); ++k) spec.a[k] = t(g.freq_abs(k)) * inv_meas;
  } else {
    for (int kx = 0; kx < g.side(); ++kx)
      for (int ky = 0; ky < g.side(); ++ky)
        spec.a[g.index(kx, ky)] = t(g.freq_abs(kx, ky)) * inv_meas;
  }
  return fft_backward_normalized(spec);
}

// ---------------------------------------------------------------------------
// kernels suite
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> verify_kernels(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  Grid g(1, 4, 8);
  FilterBank bank = build_filterbank(g);

  {  // moving variable smoothness across the kernel; a smooth exponent makes
     // the per-level sup decay, so the level-stability claim is probed with a
     // profile that saturates the log-Hoelder condition at every scale
    VariableExponent alpha = extremal_log_exponent(g, 1.5, 0.25);
    double R = estimate_clog(alpha);
    std::vector<double> sups;
    for (int v : {2, 4, 6}) sups.push_back(dhr_sup(g, alpha, v, R, 4));
    double sp = value_spread(sups);
    out.push_back({"kernels", "dhr-ratio", sp <= checks::kBracketSpreadCap, sp,
                   "sup per level: " + join_nums(sups) + "; clog=" + fmt_num(R)});
  }

  {  // r-trick constant across (R, N) combinations
    Field f = random_band_limited(g, opt.seed + 2, 100.0, 1.2);
    double Nf = 32.0, r = 0.5, m = 4.0;
    Field omega = kernel_from_transfer(g, [&](double rho) { return bank.Phi_hat(2.0 * rho / Nf); });
    std::vector<double> cs, cps;
    bool finite = true;
    for (double R : {32.0, 8.0, 128.0}) {
      Field theta = kernel_from_transfer(g, [&](double rho) { return bank.Phi_hat(rho / R); });
      RTrickReport rep = verify_r_trick(f, theta, omega, R, Nf, r, m, 4);
      finite = finite && rep.finite;
      cs.push_back(rep.c_conv);
      cps.push_back(rep.c_peetre);
    }
    // the inequality carries one constant for every (R, N); the prefactor is
    // an envelope, so per-R empirical constants below it are expected
    double c_single = std::max(*std::max_element(cs.begin(), cs.end()),
                               *std::max_element(cps.begin(), cps.end()));
    bool pass = finite && c_single <= checks::kConstantCap;
    out.push_back({"kernels", "r-trick", pass, c_single,
                   "conv constants: " + join_nums(cs) + "; peetre: " + join_nums(cps)});
  }

  {  // indicator norms under cube translation
    VariableExponent tau = random_exponent(g, opt.seed + 3, 0.8, 2.2);
    double cl = estimate_clog(reciprocal(tau));
    std::vector<double> cs;
    for (int v : {1, 3, 5}) {
      int per = cubes_per_axis(g, v);
      DyadicCube P(v, per / 3);
      double base = chi_norm(tau, P);
      double worst = 0.0;
      for (int k = -8; k <= 8; ++k) {
        if (k == 0) continue;
        DyadicCube S(v, ((per / 3 + k) % per + per) % per);
        double ratio = chi_norm(tau, S) / base / std::pow(1.0 + std::abs(k), cl);
        worst = std::max(worst, ratio);
      }
      cs.push_back(worst);
    }
    double sp = value_spread(cs);
    bool pass = sp <= checks::kLooseSpreadCap &&
                *std::max_element(cs.begin(), cs.end()) <= checks::kConstantCap;
    out.push_back({"kernels", "cube-shift", pass, sp, "constants: " + join_nums(cs)});
  }

  {  // indicator norms of nested cubes against the power bounds
    VariableExponent tau = random_exponent(g, opt.seed + 4, 0.8, 2.2);
    std::vector<double> ups, los;
    for (int v : {1, 3, 5}) {
      int w = v - 2;
      int per = cubes_per_axis(g, v);
      DyadicCube P(v, per / 3);
      DyadicCube Q(w, (per / 3) >> 2);
      double ratio = chi_norm(tau, Q) / chi_norm(tau, P);
      double meas_ratio = std::pow(std::ldexp(1.0, v - w), g.dim);  // |Q|/|P|
      ups.push_back(ratio / std::pow(meas_ratio, 1.0 / tau.lo));
      los.push_back(std::pow(meas_ratio, 1.0 / tau.hi) / ratio);
    }
    double worst = std::max(*std::max_element(ups.begin(), ups.end()),
                            *std::max_element(los.begin(), los.end()));
    out.push_back({"kernels", "cube-nested", worst <= checks::kConstantCap, worst,
                   "upper: " + join_nums(ups) + "; lower: " + join_nums(los)});
  }

  {  // localized convolution bound against the cube-sup norm
    VariableExponent p = random_exponent(g, opt.seed + 5, 1.3, 2.6);
    VariableExponent tau = random_exponent(g, opt.seed + 6, 0.8, 2.2);
    double r = 1.0;
    double m = std::ceil(2.0 * g.dim + estimate_clog(reciprocal(tau)) * r) + 1.0;
    Field f = random_band_limited(g, opt.seed + 7, 100.0, 1.2);
    double Nf = 32.0;
    Field omega = kernel_from_transfer(g, [&](double rho) { return bank.Phi_hat(2.0 * rho / Nf); });
    Field u = convolve(omega, f);
    double base_i = lp_tau_norm(p, tau, u);
    double base_ii = lp_tilde_norm(p, u);
    std::vector<double> cs_i, cs_ii;
    for (double R : {32.0, 8.0, 128.0}) {
      Field theta = kernel_from_transfer(g, [&](double rho) { return bank.Phi_hat(rho / R); });
      Field tu = convolve(theta, u);
      std::vector<double> abstu = magnitudes(tu);
      double pref = std::max(1.0, std::pow(Nf / R, m));
      double worst_i = 0.0;
      for (int v = -g.J0; v <= 0; ++v) {
        double lP = std::ldexp(1.0, -v);
        double fac = pref * std::max(1.0, std::pow(Nf * lP, (g.dim - m) / r)) * base_i;
        for (const DyadicCube& P : cubes_at_level(g, v)) {
          double cn = chi_norm(tau, P);
          std::vector<double> fa, pg;
          gather_cube(g, P, abstu, fa);
          for (double& x : fa) x /= cn;
          gather_cube(g, P, p.vals, pg);
          LpSlice s;
          s.absf = fa.data();
          s.p = pg.data();
          s.n = fa.size();
          s.meas = g.cell_measure();
          s.p_lo = p.lo;
          worst_i = std::max(worst_i, luxemburg_core(s) / fac);
        }
      }
      cs_i.push_back(worst_i);
      double fac_ii = pref * std::max(1.0, std::pow(Nf, (g.dim - m) / r)) * base_ii;
      double worst_ii = 0.0;
      for (const DyadicCube& P : cubes_at_level(g, 0)) {
        std::vector<double> fa, pg;
        gather_cube(g, P, abstu, fa);
        gather_cube(g, P, p.vals, pg);
        LpSlice s;
        s.absf = fa.data();
        s.p = pg.data();
        s.n = fa.size();
        s.meas = g.cell_measure();
        s.p_lo = p.lo;
        worst_ii = std::max(worst_ii, luxemburg_core(s) / fac_ii);
      }
      cs_ii.push_back(worst_ii);
    }
    // one constant covers all tested R; a wide band makes the filter act as
    // the identity and pins the empirical constant at exactly 1
    double worst = std::max(*std::max_element(cs_i.begin(), cs_i.end()),
                            *std::max_element(cs_ii.begin(), cs_ii.end()));
    out.push_back({"kernels", "key-estimate", worst <= checks::kConstantCap, worst,
                   "cube-sup: " + join_nums(cs_i) + "; unit cubes: " + join_nums(cs_ii)});
  }

  {  // eta-convolution boundedness on the mixed cube-sup space, both weights
    for (int variant = 0; variant < 2; ++variant) {
      std::vector<double> cs;
      for (int c = 0; c < 3; ++c) {
        std::uint64_t s = opt.seed + 10 + 10 * variant + c;
        VariableExponent p = random_exponent(g, s + 1, 1.3, 2.8);
        VariableExponent q = random_exponent(g, s + 2, 0.8, 3.0);
        VariableExponent tau = random_exponent(g, s + 3, 0.9, 2.0);
        double m = variant == 0
                       ? std::ceil(2.0 * g.dim + estimate_clog(reciprocal(tau)) +
                                   estimate_clog(reciprocal(q))) + 1.0
                       : std::ceil(2.0 * g.dim + estimate_clog(reciprocal(p)) +
                                   estimate_clog(reciprocal(q))) + 1.0;
        int V = 4;
        std::vector<Field> fs, gs;
        for (int v = 0; v <= V; ++v) {
          fs.push_back(random_band_limited(g, s + 100 + v, 120.0, 1.0));
          gs.push_back(convolve(eta_field(g, v, m), fs.back()));
        }
        const VariableExponent* tp = variant == 0 ? &tau : nullptr;
        double den = level_family_norm(g, field_magnitudes(fs), p, q, tp);
        double num = level_family_norm(g, field_magnitudes(gs), p, q, tp);
        cs.push_back(den > 0.0 ? num / den : 0.0);
      }
      double worst = *std::max_element(cs.begin(), cs.end());
      out.push_back({"kernels", variant == 0 ? "eta-mixed-bound" : "eta-mixed-bound-w",
                     worst <= checks::kConstantCap, worst, "constants: " + join_nums(cs)});
    }
  }

  {  // eta lemma brackets, 1-D and a 2-D spot check
    auto push_bracket = [&](const std::string& name, const std::vector<EtaLemmaCase>& cases) {
      std::vector<double> his, los;
      bool valid = !cases.empty();
      for (const EtaLemmaCase& c : cases) {
        valid = valid && c.stats.valid();
        his.push_back(c.stats.rmax);
        los.push_back(c.stats.rmin);
      }
      double sp = std::max(value_spread(his), value_spread(los));
      out.push_back({"kernels", name, valid && sp <= checks::kBracketSpreadCap, sp,
                     "upper ends: " + join_nums(his) + "; lower ends: " + join_nums(los)});
    };
    // self-convolutions and cross-level pairs carry different shape
    // constants, so level stability is measured within each family; a single
    // bracket still has to cover everything
    auto push_pair_bracket = [&](const std::string& name,
                                 const std::vector<EtaLemmaCase>& cases) {
      std::vector<double> his_eq, los_eq, his_cr, los_cr;
      bool valid = !cases.empty();
      double hi_all = 0.0, lo_all = inf;
      for (const EtaLemmaCase& c : cases) {
        valid = valid && c.stats.valid();
        (c.v0 == c.v1 ? his_eq : his_cr).push_back(c.stats.rmax);
        (c.v0 == c.v1 ? los_eq : los_cr).push_back(c.stats.rmin);
        hi_all = std::max(hi_all, c.stats.rmax);
        lo_all = std::min(lo_all, c.stats.rmin);
      }
      double sp = 1.0;
      if (!his_eq.empty()) sp = std::max({sp, value_spread(his_eq), value_spread(los_eq)});
      if (!his_cr.empty()) sp = std::max({sp, value_spread(his_cr), value_spread(los_cr)});
      bool bounded = hi_all <= checks::kConstantCap && lo_all >= 1.0 / checks::kConstantCap;
      out.push_back({"kernels", name, valid && bounded && sp <= checks::kBracketSpreadCap,
                     sp,
                     "equal-level upper: " + join_nums(his_eq) + ", lower: " +
                         join_nums(los_eq) + "; cross-level upper: " + join_nums(his_cr) +
                         ", lower: " + join_nums(los_cr)});
    };
    EtaLemmaReport rep = verify_eta_lemmas(g, {1, 3, 5}, 3.0, 0.7);
    push_pair_bracket("eta-conv-pair", rep.conv_pair);
    push_bracket("eta-cube-avg", rep.cube_avg);
    push_bracket("eta-three-conv", rep.three_conv);
    Grid g2(2, 4, 4);
    EtaLemmaReport rep2 = verify_eta_lemmas(g2, {1, 2}, 3.0, 0.8);
    push_pair_bracket("eta-conv-pair-2d", rep2.conv_pair);
    push_bracket("eta-three-conv-2d", rep2.three_conv);
  }

  {  // cascaded geometric sums against the exact constant
    std::mt19937_64 rng(opt.seed + 40);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double as[3] = {0.3, 0.6, 0.9};
    int Js[3] = {-5, 0, 3};
    double worst = 0.0;
    bool all_ok = true;
    int idx = 0;
    for (double q : {0.5, 1.0, 2.0}) {
      for (int it = 0; it < 10000; ++it, ++idx) {
        std::vector<double> eps(48);
        for (double& e : eps) e = unif(rng);
        HardyResult h = hardy_cascade(eps, as[idx % 3], Js[idx % 3], q);
        all_ok = all_ok && h.bound_ok;
        if (h.rhs > 0.0) worst = std::max(worst, h.lhs / h.rhs);
      }
    }
    out.push_back({"kernels", "hardy-cascade", all_ok, worst,
                   "worst lhs/rhs over 30000 draws"});
  }

  {  // level-coupled sums bounded on both cube-sup spaces
    std::vector<double> cs_tau, cs_w;
    for (int c = 0; c < 20; ++c) {
      std::uint64_t s = opt.seed + 50 + c;
      bool vary_q = c % 3 == 0;
      VariableExponent p = random_exponent(g, s + 1, 1.1, 2.6);
      VariableExponent q = vary_q ? random_exponent(g, s + 2, 0.9, 2.4)
                                  : VariableExponent::constant(g, 1.5);
      VariableExponent tau = random_exponent(g, s + 3, 0.9, 2.0);
      int V = 4;
      std::vector<Field> fs;
      for (int v = 0; v <= V; ++v)
        fs.push_back(random_band_limited(g, s + 100 + v, 120.0, 1.0));
      auto W = field_magnitudes(fs);
      if (c < 10) {
        double delta = g.dim / tau.lo + 0.5;
        auto Wg = field_magnitudes(weighted_level_sum(fs, delta));
        double den = level_family_norm(g, W, p, q, &tau);
        double num = level_family_norm(g, Wg, p, q, &tau);
        cs_tau.push_back(den > 0.0 ? num / den : 0.0);
      } else {
        double delta = g.dim / p.lo + 0.5;
        auto Wg = field_magnitudes(weighted_level_sum(fs, delta));
        double den = level_family_norm(g, W, p, q, nullptr);
        double num = level_family_norm(g, Wg, p, q, nullptr);
        cs_w.push_back(den > 0.0 ? num / den : 0.0);
      }
    }
    double worst = std::max(*std::max_element(cs_tau.begin(), cs_tau.end()),
                            *std::max_element(cs_w.begin(), cs_w.end()));
    out.push_back({"kernels", "weighted-level-sum", worst <= checks::kConstantCap, worst,
                   "cube-sup: " + join_nums(cs_tau) + "; weighted: " + join_nums(cs_w)});
  }

  return out;
}

// ---------------------------------------------------------------------------
// norms suite
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> verify_norms(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  Grid g(1, 4, 8);
  FilterBank bank = build_filterbank(g);

  {  // unit ball vs modular, five exponent shapes
    std::vector<VariableExponent> ps = {
        random_exponent(g, opt.seed + 1, 1.2, 3.0),
        random_exponent(g, opt.seed + 2, 0.6, 1.4),
        VariableExponent::constant(g, inf),
        step_exponent(g, 1.4, 2.6),
        random_exponent(g, opt.seed + 3, 0.9, 3.4, 3),
    };
    int violations = 0, trials = 0;
    for (std::size_t pc = 0; pc < ps.size(); ++pc) {
      for (int i = 0; i < 5; ++i) {
        Field f = random_band_limited(g, opt.seed + 10 + 7 * pc + i, 200.0, 1.0);
        double t = luxemburg_norm(ps[pc], f);
        if (t == 0.0) continue;
        for (double sc : {0.5, 0.9999, 1.0001, 3.0}) {
          Field h = f;
          h *= sc / t;
          ModularReport m = modular(ps[pc], h);
          bool norm_leq = sc <= 1.0;
          bool mod_leq = m.finite && m.value <= 1.0 + checks::kUnitBallSlack;
          ++trials;
          if (norm_leq != mod_leq) ++violations;
        }
      }
    }
    out.push_back({"norms", "unit-ball", violations == 0, double(violations),
                   fmt_num(double(trials)) + " scale trials"});
  }

  {  // constant-exponent closed forms
    double worst = 0.0;
    for (double pc : {0.7, 1.0, 2.5}) {
      VariableExponent p = VariableExponent::constant(g, pc);
      for (int i = 0; i < 5; ++i) {
        Field f = random_band_limited(g, opt.seed + 30 + i, 200.0, 1.0);
        double a = luxemburg_norm(p, f);
        double b = oracle::lp_norm_const(pc, f);
        if (b > 0.0) worst = std::max(worst, std::abs(a - b) / b);
      }
    }
    out.push_back({"norms", "oracle-luxemburg", worst <= checks::kOracleTol, worst, ""});
  }

  {  // mixed norm against the constant-exponent closed form
    double worst = 0.0;
    struct PQ { double p, q; };
    for (PQ c : {PQ{2.0, 1.0}, PQ{1.5, 0.7}, PQ{3.0, inf}}) {
      VariableExponent p = VariableExponent::constant(g, c.p);
      VariableExponent q = VariableExponent::constant(g, c.q);
      for (int i = 0; i < 3; ++i) {
        std::vector<Field> fs;
        for (int v = 0; v < 4; ++v)
          fs.push_back(random_band_limited(g, opt.seed + 40 + 4 * i + v, 150.0, 1.0));
        double a = mixed_norm(p, q, fs);
        double b = oracle::mixed_norm_const(c.p, c.q, fs);
        if (b > 0.0) worst = std::max(worst, std::abs(a - b) / b);
      }
    }
    out.push_back({"norms", "oracle-mixed", worst <= checks::kOracleTol, worst, ""});
  }

  {  // variable-q outer bisection against the direct iterated infimum
    double worst = 0.0;
    for (int i = 0; i < 2; ++i) {
      std::uint64_t s = opt.seed + 60 + 5 * i;
      VariableExponent p = random_exponent(g, s + 1, 1.2, 2.6);
      VariableExponent q = random_exponent(g, s + 2, 0.8, 2.2);
      std::vector<Field> fs;
      for (int v = 0; v < 4; ++v)
        fs.push_back(random_band_limited(g, s + 10 + v, 150.0, 1.0));
      double a = mixed_norm(p, q, fs);
      double b = mixed_norm_infform(p, q, fs);
      if (b > 0.0) worst = std::max(worst, std::abs(a - b) / b);
    }
    out.push_back({"norms", "mixed-infform", worst <= 1e-5, worst, ""});
  }

  {  // Besov-type norm against the classical constant-exponent display
    double worst = 0.0;
    for (double qc : {1.5, inf}) {
      BesovParams prm{VariableExponent::constant(g, 0.5), VariableExponent::constant(g, 2.0),
                      VariableExponent::constant(g, qc), VariableExponent::constant(g, 3.0),
                      bank};
      for (int i = 0; i < 2; ++i) {
        Field f = random_band_limited(g, opt.seed + 70 + i, bank.resolvable_band(), 1.0);
        double a = besov_type_norm(f, prm).value;
        double b = oracle::besov_classical_const(f, bank, 0.5, 2.0, qc, 1.0 / 3.0);
        if (b > 0.0) worst = std::max(worst, std::abs(a - b) / b);
      }
    }
    out.push_back({"norms", "oracle-besov-classical", worst <= checks::kOracleTol, worst, ""});
  }

  {  // p-weight family equals the tau family at tau = p, constant exponents
    VariableExponent p = VariableExponent::constant(g, 1.8);
    BesovParams prm{VariableExponent::constant(g, 0.4), p,
                    VariableExponent::constant(g, 1.3), p, bank};
    double worst = 0.0;
    for (int i = 0; i < 2; ++i) {
      Field f = random_band_limited(g, opt.seed + 80 + i, bank.resolvable_band(), 1.0);
      double a = besov_tilde_norm(f, prm).value;
      double b = besov_type_norm(f, prm).value;
      if (b > 0.0) worst = std::max(worst, std::abs(a - b) / b);
    }
    out.push_back({"norms", "tilde-tau-identity", worst <= checks::kOracleTol, worst, ""});
  }

  {  // Morrey norm collapses to Lebesgue at u = p
    double worst = 0.0;
    for (double pc : {1.0, 2.0, 3.5}) {
      for (int i = 0; i < 3; ++i) {
        Field f = random_band_limited(g, opt.seed + 90 + i, 200.0, 1.0);
        double a = morrey_norm(pc, pc, f);
        double b = oracle::lp_norm_const(pc, f);
        if (b > 0.0) worst = std::max(worst, std::abs(a - b) / b);
      }
    }
    out.push_back({"norms", "morrey-lebesgue", worst <= checks::kExactTol, worst, ""});
  }

  {  // positive homogeneity of the bisected norms
    VariableExponent p = random_exponent(g, opt.seed + 100, 0.8, 2.8);
    VariableExponent q = random_exponent(g, opt.seed + 101, 0.9, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
      Field f = random_band_limited(g, opt.seed + 102 + i, 200.0, 1.0);
      double c = 3.7;
      Field h = f;
      h *= c;
      Field h2 = h;
      h2 *= c;
      double a = luxemburg_norm(p, h), b = c * luxemburg_norm(p, f);
      if (b > 0.0) worst = std::max(worst, std::abs(a - b) / b);
      std::vector<Field> fs{f, h};
      std::vector<Field> cfs{h, h2};
      double am = mixed_norm(p, q, cfs), bm = c * mixed_norm(p, q, fs);
      if (bm > 0.0) worst = std::max(worst, std::abs(am - bm) / bm);
    }
    out.push_back({"norms", "homogeneity", worst <= 1e-9, worst, ""});
  }

  {  // modular-form criterion agrees with the cube-sup norm at the unit ball
    VariableExponent p = random_exponent(g, opt.seed + 110, 1.2, 2.4);
    VariableExponent q = random_exponent(g, opt.seed + 111, 0.9, 1.9);
    VariableExponent tau = random_exponent(g, opt.seed + 112, 0.9, 1.8);
    int violations = 0;
    for (int i = 0; i < 2; ++i) {
      Field f = random_band_limited(g, opt.seed + 113 + i, 200.0, 1.0);
      double t = lp_tau_norm(p, tau, f);
      if (t == 0.0) continue;
      for (double sc : {0.99, 1.01}) {
        Field h = f;
        h *= sc / t;
        double form = lp_tau_modular_form(p, q, tau, h);
        if ((sc <= 1.0) != (form <= 1.0 + checks::kUnitBallSlack)) ++violations;
      }
    }
    out.push_back({"norms", "cube-sup-modular-form", violations == 0, double(violations), ""});
  }

  // shared exponent set for the equivalence and embedding checks
  VariableExponent alpha = random_exponent(g, opt.seed + 120, 0.2, 0.8);
  VariableExponent pv = random_exponent(g, opt.seed + 121, 1.2, 2.0);
  VariableExponent qv = random_exponent(g, opt.seed + 122, 1.0, 2.5);
  VariableExponent tauv = random_exponent(g, opt.seed + 123, 0.9, 1.1);
  std::vector<Field> corpus;
  for (int i = 0; i < 5; ++i)
    corpus.push_back(random_band_limited(g, opt.seed + 130 + i, bank.resolvable_band(), 1.0));

  {  // restricting the supremum to small cubes keeps the norm equivalent
    BesovParams prm{alpha, pv, qv, tauv, bank};
    std::vector<double> ratios;
    for (const Field& f : corpus) {
      double full = besov_type_norm(f, prm).value;
      double sharp = besov_norm_sharp(f, prm).value;
      if (sharp > 0.0) ratios.push_back(full / sharp);
    }
    double sp = value_spread(ratios);
    bool pass = sp <= checks::kBracketSpreadCap;
    for (double r : ratios) pass = pass && r >= 1.0 - 1e-9 && r <= checks::kConstantCap;
    out.push_back({"norms", "sharp-equivalence", pass, sp, "ratios: " + join_nums(ratios)});
  }

  {  // shifted-window norms; gamma = 0 must reproduce the norm exactly
    BesovParams prm{alpha, pv, qv, tauv, bank};
    double worst0 = 0.0;
    for (const Field& f : corpus) {
      double a = besov_norm_star(f, prm, 0).value;
      double b = besov_type_norm(f, prm).value;
      if (b > 0.0) worst0 = std::max(worst0, std::abs(a - b) / b);
    }
    out.push_back({"norms", "star-gamma0-identity", worst0 <= 1e-12, worst0, ""});
    for (int gamma : {1, 2}) {
      std::vector<double> ratios;
      for (const Field& f : corpus) {
        double a = besov_norm_star(f, prm, gamma).value;
        double b = besov_type_norm(f, prm).value;
        if (b > 0.0) ratios.push_back(a / b);
      }
      double sp = value_spread(ratios);
      bool pass = sp <= checks::kBracketSpreadCap;
      for (double r : ratios)
        pass = pass && r >= 1.0 / checks::kConstantCap && r <= checks::kConstantCap;
      out.push_back({"norms", gamma == 1 ? "star-equivalence-g1" : "star-equivalence-g2",
                     pass, sp, "ratios: " + join_nums(ratios)});
    }
  }

  {  // collapse to the Hoelder scale when 1/tau - 1/p stays positive
    VariableExponent tau1 = VariableExponent::constant(g, 1.0);
    VariableExponent p2 = VariableExponent::constant(g, 2.0);
    VariableExponent shifted = ve_map(alpha, [&](double a) { return a + 0.5 * g.dim; });
    for (double qc : {1.5, inf}) {
      BesovParams prm{alpha, p2, VariableExponent::constant(g, qc), tau1, bank};
      std::vector<double> ratios;
      for (const Field& f : corpus) {
        double lhs = besov_type_norm(f, prm).value;
        double rhs = besov_variable_norm(f, shifted, VariableExponent::constant(g, inf),
                                         VariableExponent::constant(g, inf), bank);
        if (rhs > 0.0) ratios.push_back(lhs / rhs);
      }
      double sp = value_spread(ratios);
      bool pass = sp <= checks::kBracketSpreadCap;
      for (double r : ratios)
        pass = pass && r >= 1.0 / checks::kConstantCap && r <= checks::kConstantCap;
      out.push_back({"norms", qc == inf ? "embed-holder-qinf" : "embed-holder", pass, sp,
                     "ratios: " + join_nums(ratios)});
    }
  }

  {  // lowering the integrability with the matching smoothness shift
    VariableExponent p1 = VariableExponent::constant(g, 2.0);
    VariableExponent p2 = VariableExponent::constant(g, 1.5);
    VariableExponent tau = VariableExponent::constant(g, 1.3);
    VariableExponent q = VariableExponent::constant(g, 1.2);
    VariableExponent shifted = ve_map(
        alpha, [&](double a) { return a + g.dim * (1.0 / 1.3 + 1.0 / 1.5 - 1.0 / 2.0); });
    BesovParams prm{alpha, p1, q, tau, bank};
    std::vector<double> cs;
    for (const Field& f : corpus) {
      double lhs = besov_type_norm(f, prm).value;
      double rhs = besov_variable_norm(f, shifted, p2, q, bank);
      if (rhs > 0.0) cs.push_back(lhs / rhs);
    }
    double worst = *std::max_element(cs.begin(), cs.end());
    out.push_back({"norms", "embed-sobolev-type", worst <= checks::kConstantCap, worst,
                   "constants: " + join_nums(cs)});
  }

  {  // passage into the Hoelder scale from any cube-sup norm
    std::vector<double> svals(g.size());
    for (std::size_t i = 0; i < svals.size(); ++i)
      svals[i] = alpha.vals[i] + g.dim * (1.0 / tauv.vals[i] - 1.0 / pv.vals[i]);
    VariableExponent shifted = VariableExponent::from_samples(g, std::move(svals));
    BesovParams prm{alpha, pv, qv, tauv, bank};
    std::vector<double> cs;
    for (const Field& f : corpus) {
      double lhs = besov_variable_norm(f, shifted, VariableExponent::constant(g, inf),
                                       VariableExponent::constant(g, inf), bank);
      double rhs = besov_type_norm(f, prm).value;
      if (rhs > 0.0) cs.push_back(lhs / rhs);
    }
    double worst = *std::max_element(cs.begin(), cs.end());
    out.push_back({"norms", "embed-holder-upper", worst <= checks::kConstantCap, worst,
                   "constants: " + join_nums(cs)});
  }

  {  // pointwise block growth controlled by the norm
    BesovParams prm{alpha, pv, qv, tauv, bank};
    std::vector<double> cs;
    for (const Field& f : corpus) {
      double rhs = besov_type_norm(f, prm).value;
      if (rhs > 0.0) cs.push_back(besov_pointwise_peak(f, prm) / rhs);
    }
    double worst = *std::max_element(cs.begin(), cs.end());
    out.push_back({"norms", "pointwise-peak", worst <= checks::kConstantCap, worst,
                   "constants: " + join_nums(cs)});
  }

  {  // p-weight space with q = inf meets the Hoelder scale
    VariableExponent pw = random_exponent(g, opt.seed + 140, 1.5, 2.5);
    BesovParams prm{alpha, pw, VariableExponent::constant(g, inf), pw, bank};
    std::vector<double> ratios;
    for (const Field& f : corpus) {
      double lhs = besov_tilde_norm(f, prm).value;
      double rhs = besov_variable_norm(f, alpha, VariableExponent::constant(g, inf),
                                       VariableExponent::constant(g, inf), bank);
      if (rhs > 0.0) ratios.push_back(lhs / rhs);
    }
    double sp = value_spread(ratios);
    bool pass = sp <= checks::kBracketSpreadCap;
    for (double r : ratios)
      pass = pass && r >= 1.0 / checks::kConstantCap && r <= checks::kConstantCap;
    out.push_back({"norms", "tilde-holder-qinf", pass, sp, "ratios: " + join_nums(ratios)});
  }

  {  // tau family dominates the p-weight family at tau = p
    VariableExponent pw = random_exponent(g, opt.seed + 150, 1.4, 2.4);
    VariableExponent q = VariableExponent::constant(g, 1.3);
    BesovParams prm{alpha, pw, q, pw, bank};
    std::vector<double> cs;
    for (const Field& f : corpus) {
      double rhs = besov_type_norm(f, prm).value;
      if (rhs > 0.0) cs.push_back(besov_tilde_norm(f, prm).value / rhs);
    }
    double worst = *std::max_element(cs.begin(), cs.end());
    out.push_back({"norms", "tilde-dominated", worst <= checks::kConstantCap, worst,
                   "constants: " + join_nums(cs)});
  }

  {  // Morrey-smoothness bridge, one-sided and the q = inf bracket
    VariableExponent q = VariableExponent::constant(g, 1.5);
    BesovParams prm{alpha, VariableExponent::constant(g, 2.0), q,
                    VariableExponent::constant(g, 4.0), bank};
    std::vector<double> cs, ratios;
    for (const Field& f : corpus) {
      double nrm = besov_morrey_norm(f, alpha, 4.0, 1.5, 2.0, bank);
      double lhs = besov_type_norm(f, prm).value;
      if (nrm > 0.0) cs.push_back(lhs / nrm);
      double nrm_inf = besov_morrey_norm(f, alpha, 4.0, inf, 2.0, bank);
      BesovParams prm_inf{alpha, VariableExponent::constant(g, 2.0),
                          VariableExponent::constant(g, inf),
                          VariableExponent::constant(g, 4.0), bank};
      double lhs_inf = besov_type_norm(f, prm_inf).value;
      if (nrm_inf > 0.0) ratios.push_back(lhs_inf / nrm_inf);
    }
    double worst = *std::max_element(cs.begin(), cs.end());
    out.push_back({"norms", "morrey-bridge", worst <= checks::kConstantCap, worst,
                   "constants: " + join_nums(cs)});
    double sp = value_spread(ratios);
    bool pass = sp <= checks::kBracketSpreadCap;
    for (double r : ratios)
      pass = pass && r >= 1.0 / checks::kConstantCap && r <= checks::kConstantCap;
    out.push_back({"norms", "morrey-bridge-qinf", pass, sp, "ratios: " + join_nums(ratios)});
  }

  {  // sequence Sobolev shift along alpha - n/p = const
    SequenceParams a0{VariableExponent::constant(g, 1.0), VariableExponent::constant(g, 1.0),
                      VariableExponent::constant(g, 1.2), VariableExponent::constant(g, 1.5)};
    SequenceParams a1{VariableExponent::constant(g, 0.5), VariableExponent::constant(g, 2.0),
                      VariableExponent::constant(g, 1.2), VariableExponent::constant(g, 1.5)};
    std::vector<double> fwd, rev;
    for (int i = 0; i < 5; ++i) {
      CoefficientSequence lam = random_coefficients(g, 4, opt.seed + 160 + i);
      double n0 = seq_b_norm(lam, a0).value;
      double n1 = seq_b_norm(lam, a1).value;
      if (n0 > 0.0) fwd.push_back(n1 / n0);
      if (n1 > 0.0) rev.push_back(n0 / n1);
    }
    double worst = *std::max_element(fwd.begin(), fwd.end());
    out.push_back({"norms", "sequence-sobolev", worst <= checks::kConstantCap, worst,
                   "forward: " + join_nums(fwd) + "; reverse: " + join_nums(rev)});
  }

  return out;
}

// ---------------------------------------------------------------------------
// transform suite
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> verify_transform(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  Grid g(1, 4, 8);
  FilterBank bankA = build_filterbank(g);
  FilterBank bankB = build_filterbank(g, BankProfile{21.0 / 20.0, 39.0 / 20.0});

  {  // partition of unity on the resolvable band
    double worst = std::max(calderon_residual(bankA), calderon_residual(bankB));
    out.push_back({"transform", "calderon", worst <= checks::kCalderonTol, worst, ""});
  }

  {  // block sum reproduces band-limited inputs
    double worst = 0.0;
    for (const FilterBank* b : {&bankA, &bankB}) {
      for (int i = 0; i < 5; ++i) {
        Field f = random_band_limited(g, opt.seed + 10 + i, b->resolvable_band(), 1.0);
        Field r = reconstruct_blocks(f, *b);
        double err = 0.0;
        for (std::size_t k = 0; k < f.a.size(); ++k)
          err = std::max(err, std::abs(r.a[k] - f.a[k]));
        worst = std::max(worst, err / f.max_abs());
      }
    }
    out.push_back({"transform", "reconstruction", worst <= checks::kReconTol, worst, ""});
  }

  {  // analysis followed by synthesis is the identity on the band
    double worst = 0.0;
    for (const FilterBank* b : {&bankA, &bankB}) {
      for (int i = 0; i < 3; ++i) {
        Field f = random_band_limited(g, opt.seed + 20 + i, b->resolvable_band(), 1.0);
        worst = std::max(worst, quasi_atomic_decomposition(f, *b).recon_rel_err);
      }
    }
    out.push_back({"transform", "transform-identity", worst <= checks::kReconTol, worst, ""});
  }

  {  // analysis coefficients against the norm: frame bracket and bank agreement
    VariableExponent alpha = random_exponent(g, opt.seed + 30, 0.2, 0.8);
    VariableExponent p = random_exponent(g, opt.seed + 31, 1.3, 2.4);
    VariableExponent q = VariableExponent::constant(g, 1.5);
    VariableExponent tau = random_exponent(g, opt.seed + 32, 0.9, 1.6);
    SequenceParams sprm{alpha, p, q, tau};
    BesovParams bprmA{alpha, p, q, tau, bankA};
    BesovParams bprmB{alpha, p, q, tau, bankB};
    bool pass = true;
    double worst = 0.0;
    std::vector<double> rA, rB;
    for (int i = 0; i < 10; ++i) {
      Field f = random_band_limited(
          g, opt.seed + 40 + i, std::min(bankA.resolvable_band(), bankB.resolvable_band()),
          1.0);
      double a = seq_b_norm(phi_transform(f, bankA), sprm).value /
                 besov_type_norm(f, bprmA).value;
      double b = seq_b_norm(phi_transform(f, bankB), sprm).value /
                 besov_type_norm(f, bprmB).value;
      rA.push_back(a);
      rB.push_back(b);
      pass = pass && a >= 1.0 / checks::kFrameCap && a <= checks::kFrameCap &&
             b >= 1.0 / checks::kFrameCap && b <= checks::kFrameCap;
      double agree = std::max(a / b, b / a);
      worst = std::max(worst, agree);
      pass = pass && agree <= checks::kPairAgreeCap;
    }
    out.push_back({"transform", "frame-bracket", pass, worst,
                   "bank A: " + join_nums(rA) + "; bank B: " + join_nums(rB)});
  }

  {  // majorant sequence dominates pointwise
    double worst = inf;
    for (int i = 0; i < 5; ++i) {
      CoefficientSequence lam = random_coefficients(g, 4, opt.seed + 60 + i);
      CoefficientSequence star = lambda_star(lam, 0.7, 3.0);
      for (int v = 0; v <= lam.V; ++v)
        for (std::size_t k = 0; k < lam.lam[v].size(); ++k) {
          double l = std::abs(lam.lam[v][k]);
          if (l > 0.0) worst = std::min(worst, star.lam[v][k].real() / l);
        }
    }
    out.push_back({"transform", "majorant-dominates", worst >= 1.0, worst, ""});
  }

  {  // majorant equivalence above the decay threshold, both weights
    VariableExponent alpha = random_exponent(g, opt.seed + 70, 0.2, 0.6);
    VariableExponent p = random_exponent(g, opt.seed + 71, 1.4, 2.2);
    VariableExponent q = random_exponent(g, opt.seed + 72, 1.1, 1.9);
    VariableExponent tau = random_exponent(g, opt.seed + 73, 0.9, 1.5);
    SequenceParams sprm{alpha, p, q, tau};
    double r = 0.5 * p.lo;
    double a_exp = r * std::max(2.0 * estimate_clog(reciprocal(q)) + estimate_clog(alpha),
                                2.0 * (1.0 / q.lo - 1.0 / q.hi) + alpha.hi - alpha.lo);
    double d_b = g.dim + a_exp + g.dim / tau.lo + 0.25;
    double d_bt = g.dim + a_exp + estimate_clog(reciprocal(p)) + g.dim / p.lo + 0.25;
    std::vector<double> ratios_b, ratios_bt;
    for (int i = 0; i < 5; ++i) {
      CoefficientSequence lam = random_coefficients(g, 4, opt.seed + 80 + i);
      double den_b = seq_b_norm(lam, sprm).value;
      double den_bt = seq_b_tilde_norm(lam, sprm).value;
      if (den_b > 0.0)
        ratios_b.push_back(seq_b_norm(lambda_star(lam, r, d_b), sprm).value / den_b);
      if (den_bt > 0.0)
        ratios_bt.push_back(seq_b_tilde_norm(lambda_star(lam, r, d_bt), sprm).value / den_bt);
    }
    double sp = std::max(value_spread(ratios_b), value_spread(ratios_bt));
    bool pass = sp <= checks::kBracketSpreadCap;
    for (double x : ratios_b) pass = pass && x >= 1.0 - 1e-9;
    for (double x : ratios_bt) pass = pass && x >= 1.0 - 1e-9;
    out.push_back({"transform", "majorant-equivalence", pass, sp,
                   "cube-sup: " + join_nums(ratios_b) + "; weighted: " + join_nums(ratios_bt)});

    // below the threshold only growth is reported
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
      CoefficientSequence lam = random_coefficients(g, 4, opt.seed + 90 + i);
      double den = seq_b_norm(lam, sprm).value;
      if (den > 0.0)
        worst = std::max(worst,
                         seq_b_norm(lambda_star(lam, r, 0.75 * g.dim), sprm).value / den);
    }
    out.push_back({"transform", "majorant-below-threshold", true, worst,
                   "growth reported only; d below the decay threshold"});
  }

  {  // coefficient bound from the sequence norm
    VariableExponent alpha = random_exponent(g, opt.seed + 100, 0.2, 0.7);
    SequenceParams sprm{alpha, random_exponent(g, opt.seed + 101, 1.3, 2.2),
                        random_exponent(g, opt.seed + 102, 1.0, 1.8),
                        random_exponent(g, opt.seed + 103, 0.9, 1.5)};
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      CoefficientSequence lam = random_coefficients(g, 4, opt.seed + 110 + i);
      worst = std::max(worst, coefficient_bound_constant(lam, sprm, false));
      worst = std::max(worst, coefficient_bound_constant(lam, sprm, true));
    }
    out.push_back({"transform", "coefficient-bound", worst <= checks::kConstantCap, worst, ""});
  }

  {  // cellwise envelopes sandwich the norm
    VariableExponent alpha = random_exponent(g, opt.seed + 120, 0.2, 0.7);
    VariableExponent p = random_exponent(g, opt.seed + 121, 1.3, 2.2);
    VariableExponent q = VariableExponent::constant(g, 1.4);
    VariableExponent tau = random_exponent(g, opt.seed + 122, 0.9, 1.5);
    SequenceParams sprm{alpha, p, q, tau};
    BesovParams bprm{alpha, p, q, tau, bankA};
    std::vector<double> c_lo, c_hi;
    for (int i = 0; i < 5; ++i) {
      Field f = random_band_limited(g, opt.seed + 130 + i, bankA.resolvable_band(), 1.0);
      double nb = besov_type_norm(f, bprm).value;
      double ninf = seq_b_norm(inf_sequence(f, bankA, 2), sprm).value;
      double nsup = seq_b_norm(sup_sequence(f, bankA), sprm).value;
      if (nb > 0.0) c_lo.push_back(ninf / nb);
      if (nsup > 0.0) c_hi.push_back(nb / nsup);
    }
    double worst = std::max(*std::max_element(c_lo.begin(), c_lo.end()),
                            *std::max_element(c_hi.begin(), c_hi.end()));
    out.push_back({"transform", "envelope-sandwich", worst <= checks::kConstantCap, worst,
                   "inf/norm: " + join_nums(c_lo) + "; norm/sup: " + join_nums(c_hi)});
  }

  return out;
}

// ---------------------------------------------------------------------------
// atoms suite
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> verify_atoms(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  Grid g(1, 4, 8);
  FilterBank bank = build_filterbank(g);

  {  // worked values of the admissibility thresholds
    RequiredKL a = required_K_L(1.0, 1.0, 2.0, 1.0, 1);
    RequiredKL b = required_K_L(1.0, 1.0, 2.0, 2.0, 1);
    RequiredKL c = required_K_L(0.0, 0.0, 0.5, 1.0, 1);
    bool pass = a.K == 3 && b.L == -1 && c.L == 1;
    out.push_back({"atoms", "required-kl", pass, double(a.K),
                   "K=" + std::to_string(a.K) + " L=" + std::to_string(b.L) +
                       " L'=" + std::to_string(c.L)});
  }

  {  // maker output always validates
    std::mt19937_64 rng(opt.seed + 1);
    std::uniform_int_distribution<int> vd(0, g.J - 3), Kd(0, 3), Ld(-1, 2), fd(0, 1), gd(0, 2);
    double gammas[3] = {1.3, 1.5, 2.0};
    bool all_ok = true;
    double worst = 0.0;
    std::string first_fail;
    for (int i = 0; i < 50; ++i) {
      AtomSpec spec;
      spec.K = Kd(rng);
      spec.L = Ld(rng);
      spec.gamma = gammas[gd(rng)];
      spec.family = fd(rng) ? AtomFamily::PolyBump : AtomFamily::SmoothBump;
      int v = vd(rng);
      std::uniform_int_distribution<int> md(0, (1 << (g.J0 + v)) - 1);
      Atom a = make_atom(g, spec, v, {md(rng), 0});
      AtomCheck chk = validate_atom(a);
      worst = std::max(worst, chk.worst_deriv);
      if (!chk.ok && first_fail.empty()) first_fail = chk.reason;
      all_ok = all_ok && chk.ok;
    }
    out.push_back({"atoms", "make-validate-closure", all_ok, worst,
                   all_ok ? "50 random atoms" : first_fail});
  }

  {  // cross-scale decay of the filtered atoms
    bool pass = true;
    std::string note;
    for (AtomFamily fam : {AtomFamily::SmoothBump, AtomFamily::PolyBump}) {
      AtomSpec spec;
      spec.K = 3;
      spec.L = 1;
      spec.family = fam;
      Atom a = make_atom(g, spec, 3, {5, 0});
      FjDecayReport rep = verify_fj_decay(a, bank);
      pass = pass && rep.high_ok && rep.low_ok;
      note += (fam == AtomFamily::SmoothBump ? "smooth: " : "poly: ") +
              join_nums(rep.sup_norms) + "; ";
    }
    AtomSpec spec2;
    spec2.K = 2;
    spec2.L = 0;
    Atom a2 = make_atom(g, spec2, 4, {1, 0});
    FjDecayReport rep2 = verify_fj_decay(a2, bank);
    pass = pass && rep2.high_ok && rep2.low_ok;
    out.push_back({"atoms", "filtered-decay", pass, 0.0, note});
  }

  {  // synthesis norm controlled by the coefficient norm, family-stable
    VariableExponent alpha = random_exponent(g, opt.seed + 20, 0.5, 1.0);
    VariableExponent p = random_exponent(g, opt.seed + 21, 1.5, 2.5);
    VariableExponent q = VariableExponent::constant(g, 1.4);
    VariableExponent tau = VariableExponent::constant(g, 1.0);
    SequenceParams sprm{alpha, p, q, tau};
    BesovParams bprm{alpha, p, q, tau, bank};
    AtomSpec specA{3, 1, 1.5, AtomFamily::SmoothBump};
    AtomSpec specB{3, 1, 1.5, AtomFamily::PolyBump};
    bool pass = true;
    double worst_pair = 0.0;
    std::vector<double> cA, cB;
    for (int i = 0; i < 3; ++i) {
      CoefficientSequence lam = random_coefficients(g, g.J - 3, opt.seed + 30 + i, 0.08);
      double den = seq_b_norm(lam, sprm).value;
      if (den == 0.0) continue;
      double a = besov_type_norm(atomic_synthesis(lam, specA), bprm).value / den;
      double b = besov_type_norm(atomic_synthesis(lam, specB), bprm).value / den;
      cA.push_back(a);
      cB.push_back(b);
      pass = pass && a <= checks::kConstantCap && b <= checks::kConstantCap;
      double agree = std::max(a / b, b / a);
      worst_pair = std::max(worst_pair, agree);
      pass = pass && agree <= checks::kPairAgreeCap;
    }
    out.push_back({"atoms", "synthesis-bound", pass, worst_pair,
                   "smooth: " + join_nums(cA) + "; poly: " + join_nums(cB)});
  }

  {  // transform-pair decomposition quality and kernel concentration
    double worst = 0.0, tail = 0.0;
    for (int i = 0; i < 2; ++i) {
      Field f = random_band_limited(g, opt.seed + 40 + i, bank.resolvable_band(), 1.0);
      QuasiAtomReport rep = quasi_atomic_decomposition(f, bank);
      worst = std::max(worst, rep.recon_rel_err);
      tail = std::max(tail, rep.tail_fraction);
    }
    out.push_back({"atoms", "quasi-decomposition", worst <= checks::kReconTol, worst,
                   "kernel mass outside 3Q: " + fmt_num(tail)});
  }

  return out;
}

inline std::vector<CheckResult> verify_suite(const std::string& suite,
                                             const VerifyOptions& opt = {}) {
  std::vector<CheckResult> out;
  auto append = [&](std::vector<CheckResult> v) {
    out.insert(out.end(), v.begin(), v.end());
  };
  if (suite == "kernels")
    append(verify_kernels(opt));
  else if (suite == "norms")
    append(verify_norms(opt));
  else if (suite == "transform")
    append(verify_transform(opt));
  else if (suite == "atoms")
    append(verify_atoms(opt));
  else if (suite == "all") {
    append(verify_kernels(opt));
    append(verify_norms(opt));
    append(verify_transform(opt));
    append(verify_atoms(opt));
  } else {
    throw std::invalid_argument("unknown suite: " + suite);
  }
  return out;
}

}  // namespace varbesov
