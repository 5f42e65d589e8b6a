#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "fft.hpp"
#include "filterbank.hpp"
#include "grid.hpp"
#include "sequences.hpp"

namespace varbesov {

enum class AtomFamily { SmoothBump, PolyBump };

struct AtomSpec {
  int K = 3;
  int L = 1;
  double gamma = 1.5;  // support halfwidth in units of the cube halfwidth
  AtomFamily family = AtomFamily::SmoothBump;
};

struct RequiredKL {
  int K = 0;
  int L = -1;
};

// r_minus is tau^- for the tau-normalized family, p^- for the p-weight family
inline RequiredKL required_K_L(double alpha_minus, double alpha_plus, double p_minus,
                               double r_minus, int n) {
  RequiredKL kl;
  double kraw = alpha_plus + double(n) / r_minus;
  kl.K = std::max(0, int(std::floor(kraw)) + 1);
  double lraw = n * (1.0 / std::min(1.0, p_minus) - 1.0) - alpha_minus;
  kl.L = std::max(-1, int(std::floor(lraw)));
  return kl;
}

inline RequiredKL required_K_L(const VariableExponent& alpha, const VariableExponent& p,
                               const VariableExponent& r, int n) {
  return required_K_L(alpha.lo, alpha.hi, p.lo, r.lo, n);
}

// 1-D profile on the centered offset lattice; vals[k - off_lo] at grid offset k
struct AtomProfile {
  int off_lo = 0, off_hi = 0;
  std::vector<double> vals;
};

namespace detail {

inline double atom_window(AtomFamily fam, int K, double t) {
  double s = 1.0 - t * t;
  if (s <= 0.0) return 0.0;
  return fam == AtomFamily::SmoothBump ? std::exp(-1.0 / s) : std::pow(s, K + 4);
}

}  // namespace detail

// window times the polynomial t^{L+1} orthogonalized against {1,..,t^L} in the
// grid-quadrature inner product weighted by the window; the t-moments 0..L then
// vanish exactly in quadrature, and so do the centered x-moments
inline AtomProfile build_atom_profile(const Grid& g, const AtomSpec& spec, int v,
                                      bool with_moments) {
  if (v < 0 || v > g.J - 3)
    throw std::invalid_argument("atom profile: need 0 <= v <= J - 3");
  if (!(spec.gamma > 1.0) || !(spec.gamma <= 2.0))
    throw std::invalid_argument("atom profile: need 1 < gamma <= 2");
  AtomProfile prof;
  double w_half = 0.5 * spec.gamma * std::ldexp(1.0, -v);  // halfwidth in coords
  double hw_cells = w_half / g.h();
  prof.off_hi = int(std::ceil(hw_cells)) + 1;
  prof.off_lo = -prof.off_hi;
  int cnt = prof.off_hi - prof.off_lo + 1;
  std::vector<double> t(cnt), win(cnt);
  for (int k = prof.off_lo; k <= prof.off_hi; ++k) {
    t[k - prof.off_lo] = k * g.h() / w_half;
    win[k - prof.off_lo] = detail::atom_window(spec.family, spec.K, t[k - prof.off_lo]);
  }
  prof.vals = win;
  if (with_moments && spec.L >= 0) {
    auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
      double s = 0.0;
      for (int i = 0; i < cnt; ++i) s += a[i] * b[i] * win[i];
      return s;
    };
    std::vector<std::vector<double>> basis;  // orthogonalized 1, t, .., t^L
    std::vector<double> poly(cnt, 1.0);
    for (int deg = 0; deg <= spec.L + 1; ++deg) {
      std::vector<double> e = poly;
      for (const auto& b : basis) {
        double c = dot(e, b) / dot(b, b);
        for (int i = 0; i < cnt; ++i) e[i] -= c * b[i];
      }
      if (deg <= spec.L)
        basis.push_back(std::move(e));
      else
        for (int i = 0; i < cnt; ++i) prof.vals[i] = e[i] * win[i];
      for (int i = 0; i < cnt; ++i) poly[i] *= t[i];
    }
  }
  return prof;
}

struct Atom {
  int v = 0;
  std::array<int, 2> m{0, 0};
  AtomSpec spec;
  double amplitude = 1.0;
  Field samples;
};

inline std::size_t atom_center_index(const Grid& g, int v, const std::array<int, 2>& m) {
  long c0 = (2L * m[0] + 1) << (g.J - v - 1);
  if (g.dim == 1) return static_cast<std::size_t>(c0 % g.side());
  long c1 = (2L * m[1] + 1) << (g.J - v - 1);
  return static_cast<std::size_t>((c0 % g.side())) * g.side() +
         static_cast<std::size_t>(c1 % g.side());
}

inline Field embed_profile(const Grid& g, const AtomProfile& prof, int v,
                           const std::array<int, 2>& m, double amp) {
  Field f(g);
  int N = g.side();
  long c0 = ((2L * m[0] + 1) << (g.J - v - 1)) % N;
  if (g.dim == 1) {
    for (int k = prof.off_lo; k <= prof.off_hi; ++k) {
      double val = prof.vals[k - prof.off_lo];
      if (val == 0.0) continue;
      long idx = ((c0 + k) % N + N) % N;
      f.a[static_cast<std::size_t>(idx)] = amp * val;
    }
  } else {
    long c1 = ((2L * m[1] + 1) << (g.J - v - 1)) % N;
    for (int k0 = prof.off_lo; k0 <= prof.off_hi; ++k0) {
      double v0 = prof.vals[k0 - prof.off_lo];
      if (v0 == 0.0) continue;
      long i0 = ((c0 + k0) % N + N) % N;
      for (int k1 = prof.off_lo; k1 <= prof.off_hi; ++k1) {
        double v1 = prof.vals[k1 - prof.off_lo];
        if (v1 == 0.0) continue;
        long i1 = ((c1 + k1) % N + N) % N;
        f.a[static_cast<std::size_t>(i0) * N + i1] = amp * v0 * v1;
      }
    }
  }
  return f;
}

// sup norms of all partial derivatives up to total order K, by spectral
// differentiation of the embedded field; shared by the maker and the validator
inline std::vector<double> derivative_sups(const Field& f, int K) {
  const Grid& g = f.grid;
  Field F = fft_forward(f);
  std::vector<double> sups;
  auto sup_of = [&](int b0, int b1) {
    Field D(g);
    int N = g.side();
    if (g.dim == 1) {
      for (int i = 0; i < N; ++i) {
        double xi = g.freq_of_mode(g.signed_mode(i));
        D.a[i] = F.a[i] * std::pow(cplx(0.0, xi), b0);
      }
    } else {
      for (int i = 0; i < N; ++i) {
        double xi0 = g.freq_of_mode(g.signed_mode(i));
        cplx w0 = std::pow(cplx(0.0, xi0), b0);
        for (int j = 0; j < N; ++j) {
          double xi1 = g.freq_of_mode(g.signed_mode(j));
          D.a[static_cast<std::size_t>(i) * N + j] =
              F.a[static_cast<std::size_t>(i) * N + j] * w0 * std::pow(cplx(0.0, xi1), b1);
        }
      }
    }
    Field d = fft_backward_normalized(D);
    return d.max_abs();
  };
  for (int total = 0; total <= K; ++total) {
    if (g.dim == 1) {
      sups.push_back(sup_of(total, 0));
    } else {
      for (int b0 = 0; b0 <= total; ++b0) sups.push_back(sup_of(b0, total - b0));
    }
  }
  return sups;
}

inline std::vector<int> derivative_orders(int dim, int K) {
  std::vector<int> ord;
  for (int total = 0; total <= K; ++total) {
    int reps = dim == 1 ? 1 : total + 1;
    for (int r = 0; r < reps; ++r) ord.push_back(total);
  }
  return ord;
}

// amplitude for one level: 0.95 of the tightest derivative budget
inline double atom_amplitude(const Grid& g, const AtomProfile& prof, int v,
                             const AtomSpec& spec) {
  Field raw = embed_profile(g, prof, v, {0, 0}, 1.0);
  std::vector<double> sups = derivative_sups(raw, spec.K);
  std::vector<int> ord = derivative_orders(g.dim, spec.K);
  double amp = inf;
  for (std::size_t i = 0; i < sups.size(); ++i) {
    if (sups[i] == 0.0) continue;
    amp = std::min(amp, std::pow(2.0, v * (ord[i] + 0.5)) / sups[i]);
  }
  return 0.95 * amp;
}

inline Atom make_atom(const Grid& g, const AtomSpec& spec, int v,
                      const std::array<int, 2>& m) {
  int per = 1 << (g.J0 + v);
  for (int ax = 0; ax < g.dim; ++ax)
    if (m[ax] < 0 || m[ax] >= per) throw std::invalid_argument("make_atom: m out of range");
  bool moments = v >= 1 && spec.L >= 0;
  AtomProfile prof = build_atom_profile(g, spec, v, moments);
  Atom a;
  a.v = v;
  a.m = m;
  a.spec = spec;
  a.amplitude = atom_amplitude(g, prof, v, spec);
  a.samples = embed_profile(g, prof, v, m, a.amplitude);
  return a;
}

struct AtomCheck {
  bool ok = true;
  double worst_deriv = 0.0;   // max over |beta| <= K of sup / budget
  double worst_moment = 0.0;  // max |centered moment|, orders <= L
  double moment_tol = 0.0;
  std::string reason;
};

inline AtomCheck validate_atom(const Atom& a) {
  const Grid& g = a.samples.grid;
  AtomCheck chk;
  double w_half = 0.5 * a.spec.gamma * std::ldexp(1.0, -a.v);
  double cx = (a.m[0] + 0.5) * std::ldexp(1.0, -a.v);
  double cy = (a.m[1] + 0.5) * std::ldexp(1.0, -a.v);
  double sup_abs = a.samples.max_abs();
  // support: outside gamma Q the samples must vanish identically
  for (std::size_t i = 0; i < a.samples.a.size(); ++i) {
    auto co = g.cell_coords(i);
    double d0 = g.axis_dist(co[0] - cx);
    double d1 = g.dim == 2 ? g.axis_dist(co[1] - cy) : 0.0;
    if ((d0 > w_half || d1 > w_half) && a.samples.a[i] != cplx(0.0)) {
      chk.ok = false;
      chk.reason = "support leaks outside gamma Q";
      return chk;
    }
  }
  std::vector<double> sups = derivative_sups(a.samples, a.spec.K);
  std::vector<int> ord = derivative_orders(g.dim, a.spec.K);
  for (std::size_t i = 0; i < sups.size(); ++i) {
    double ratio = sups[i] / std::pow(2.0, a.v * (ord[i] + 0.5));
    chk.worst_deriv = std::max(chk.worst_deriv, ratio);
  }
  if (chk.worst_deriv > 1.0) {
    chk.ok = false;
    chk.reason = "derivative bound exceeded";
  }
  double supp_meas = std::pow(2.0 * w_half, g.dim);
  chk.moment_tol = 1e-12 * sup_abs * supp_meas;
  if (a.v >= 1 && a.spec.L >= 0) {
    // moments in coordinates unwrapped around the cube center
    for (int b0 = 0; b0 <= a.spec.L; ++b0) {
      for (int b1 = 0; b1 <= (g.dim == 2 ? a.spec.L - b0 : 0); ++b1) {
        double mom = 0.0;
        for (std::size_t i = 0; i < a.samples.a.size(); ++i) {
          double re = a.samples.a[i].real();
          if (re == 0.0) continue;
          auto co = g.cell_coords(i);
          double u0 = co[0] - cx;
          u0 -= g.box() * std::round(u0 / g.box());
          double term = re * std::pow(u0, b0);
          if (g.dim == 2) {
            double u1 = co[1] - cy;
            u1 -= g.box() * std::round(u1 / g.box());
            term *= std::pow(u1, b1);
          }
          mom += term;
        }
        mom *= g.cell_measure();
        chk.worst_moment = std::max(chk.worst_moment, std::abs(mom));
      }
    }
    if (chk.worst_moment > chk.moment_tol) {
      chk.ok = false;
      chk.reason = "moment cancellation violated";
    }
  }
  return chk;
}

// ---------------------------------------------------------------------------
// decay of phi_j * a across scales
// ---------------------------------------------------------------------------

struct FjDecayReport {
  std::vector<double> sup_norms;  // index j = 0..V
  double high_cap = 0.0;          // allowed ratio above the atom level
  double low_cap = 0.0;           // allowed ratio below
  bool high_ok = true, low_ok = true;
};

// successive sup-norm ratios; the admitted constant is pinned from the first
// pair on each side, doubled
inline FjDecayReport verify_fj_decay(const Atom& a, const FilterBank& bank) {
  FjDecayReport rep;
  for (int j = 0; j <= bank.V; ++j)
    rep.sup_norms.push_back(lp_block(a.samples, bank, j).max_abs());
  int v = a.v;
  double rK = std::pow(2.0, -a.spec.K);
  double rL = std::pow(2.0, -(a.spec.L + a.samples.grid.dim + 1));
  if (v + 1 <= bank.V && rep.sup_norms[v] > 0.0) {
    double first = rep.sup_norms[v + 1] / rep.sup_norms[v];
    rep.high_cap = 2.0 * std::max(first, rK);
    for (int j = v + 1; j + 1 <= bank.V; ++j) {
      if (rep.sup_norms[j] == 0.0) break;
      if (rep.sup_norms[j + 1] / rep.sup_norms[j] > rep.high_cap) rep.high_ok = false;
    }
  }
  if (v - 1 >= 0 && rep.sup_norms[v] > 0.0) {
    double first = rep.sup_norms[v - 1] / rep.sup_norms[v];
    rep.low_cap = 2.0 * std::max(first, rL);
    for (int j = v - 1; j - 1 >= 0; --j) {
      if (rep.sup_norms[j] == 0.0) break;
      if (rep.sup_norms[j - 1] / rep.sup_norms[j] > rep.low_cap) rep.low_ok = false;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// synthesis sum lambda_{v,m} a_{v,m}; one profile and amplitude per level
// ---------------------------------------------------------------------------

inline Field atomic_synthesis(const CoefficientSequence& s, const AtomSpec& spec) {
  const Grid& g = s.grid;
  if (s.V > g.J - 3) throw std::invalid_argument("atomic_synthesis: V above J - 3");
  Field f(g);
  int N = g.side();
  for (int v = 0; v <= s.V; ++v) {
    bool moments = v >= 1 && spec.L >= 0;
    AtomProfile prof = build_atom_profile(g, spec, v, moments);
    double amp = atom_amplitude(g, prof, v, spec);
    int per = s.per_axis(v);
    for (int m0 = 0; m0 < per; ++m0) {
      long c0 = ((2L * m0 + 1) << (g.J - v - 1)) % N;
      for (int m1 = 0; m1 < (g.dim == 2 ? per : 1); ++m1) {
        cplx lam = s.lam[v][g.dim == 1 ? m0 : static_cast<std::size_t>(m0) * per + m1];
        if (lam == cplx(0.0)) continue;
        cplx w = lam * amp;
        if (g.dim == 1) {
          for (int k = prof.off_lo; k <= prof.off_hi; ++k) {
            double val = prof.vals[k - prof.off_lo];
            if (val == 0.0) continue;
            long idx = ((c0 + k) % N + N) % N;
            f.a[static_cast<std::size_t>(idx)] += w * val;
          }
        } else {
          long c1 = ((2L * m1 + 1) << (g.J - v - 1)) % N;
          for (int k0 = prof.off_lo; k0 <= prof.off_hi; ++k0) {
            double v0 = prof.vals[k0 - prof.off_lo];
            if (v0 == 0.0) continue;
            long i0 = ((c0 + k0) % N + N) % N;
            for (int k1 = prof.off_lo; k1 <= prof.off_hi; ++k1) {
              double v1 = prof.vals[k1 - prof.off_lo];
              if (v1 == 0.0) continue;
              long i1 = ((c1 + k1) % N + N) % N;
              f.a[static_cast<std::size_t>(i0) * N + i1] += w * v0 * v1;
            }
          }
        }
      }
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// quasi-atomic decomposition through the transform pair; the synthesis
// kernels are band-limited, so concentration outside 3Q is reported, not
// asserted
// ---------------------------------------------------------------------------

struct QuasiAtomReport {
  double recon_rel_err = 0.0;  // sup error of T_psi S_phi f against f
  double tail_fraction = 0.0;  // psi_{1,0} mass fraction outside 3 Q_{1,0}
};

inline QuasiAtomReport quasi_atomic_decomposition(const Field& f, const FilterBank& bank) {
  const Grid& g = f.grid;
  QuasiAtomReport rep;
  CoefficientSequence s = phi_transform(f, bank);
  Field rec = inverse_phi_transform(s, bank);
  double scale = f.max_abs();
  double err = 0.0;
  for (std::size_t i = 0; i < f.a.size(); ++i)
    err = std::max(err, std::abs(rec.a[i] - f.a[i]));
  rep.recon_rel_err = scale > 0.0 ? err / scale : err;
  if (bank.V < 1) return rep;
  CoefficientSequence one(g, 1);
  one.at(1, 0, 0) = 1.0;
  Field psi = inverse_phi_transform(one, bank);
  DyadicCube Q(1, 0, 0);
  double cx = 0.5 * Q.l(), cy = 0.5 * Q.l(), r = 1.5 * Q.l();
  double inside = 0.0, total = 0.0;
  for (std::size_t i = 0; i < psi.a.size(); ++i) {
    double m2 = std::norm(psi.a[i]);
    total += m2;
    auto co = g.cell_coords(i);
    bool in = g.axis_dist(co[0] - cx) <= r &&
              (g.dim == 1 || g.axis_dist(co[1] - cy) <= r);
    if (in) inside += m2;
  }
  rep.tail_fraction = total > 0.0 ? 1.0 - inside / total : 0.0;
  return rep;
}

}  // namespace varbesov
