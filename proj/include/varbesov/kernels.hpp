#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "exponents.hpp"
#include "fft.hpp"
#include "grid.hpp"
#include "parallel.hpp"

namespace varbesov {

// eta_t(x) = t^n (1 + t|x|)^{-m}, |x| the nearest-image distance
inline double eta_scaled(const Grid& g, double t, double m_exp, double dx, double dy = 0.0) {
  double d = g.periodic_dist(dx, dy);
  double tn = g.dim == 1 ? t : t * t;
  return tn * std::pow(1.0 + t * d, -m_exp);
}

inline double eta(const Grid& g, int v, double m_exp, double dx, double dy = 0.0) {
  return eta_scaled(g, std::ldexp(1.0, v), m_exp, dx, dy);
}

inline Field eta_field_scaled(const Grid& g, double t, double m_exp, double cx = 0.0,
                              double cy = 0.0) {
  return sample(g, [&](double x, double y) {
    return cplx{eta_scaled(g, t, m_exp, x - cx, y - cy), 0.0};
  });
}

inline Field eta_field(const Grid& g, int v, double m_exp, double cx = 0.0, double cy = 0.0) {
  return eta_field_scaled(g, std::ldexp(1.0, v), m_exp, cx, cy);
}

// periodic convolution (f*g)(x) = integral f(y) g(x-y) dy, rectangle rule
inline Field convolve(const Field& f, const Field& g) {
  if (f.grid != g.grid) throw std::invalid_argument("convolve: grid mismatch");
  Field F = fft_forward(f);
  Field G = fft_forward(g);
  for (std::size_t i = 0; i < F.a.size(); ++i) F.a[i] *= G.a[i];
  fft_inplace(F.grid, F.a, FFTW_BACKWARD);
  double scale = F.grid.cell_measure() / double(F.grid.size());
  for (cplx& z : F.a) z *= scale;
  return F;
}

inline Field abs_field(const Field& f) {
  Field out(f.grid);
  for (std::size_t i = 0; i < f.a.size(); ++i) out.a[i] = std::abs(f.a[i]);
  return out;
}

inline Field abs_pow_field(const Field& f, double r) {
  Field out(f.grid);
  for (std::size_t i = 0; i < f.a.size(); ++i) {
    double m = std::abs(f.a[i]);
    out.a[i] = m == 0.0 ? 0.0 : std::pow(m, r);
  }
  return out;
}

// Hardy-Littlewood maximal function over open balls with dyadic radii
// {h, 2h, 4h, ...} up to box/2; the radius-h ball is the point itself, so
// Mf >= |f| holds exactly.
inline Field maximal_function(const Field& f) {
  const Grid& g = f.grid;
  Field absf = abs_field(f);
  Field result = absf;
  Field spec = fft_forward(absf);
  for (double r = 2.0 * g.h(); r <= 0.5 * g.box(); r *= 2.0) {
    Field ball(g);
    double count = 0.0;
    if (g.dim == 1) {
      for (int i = 0; i < g.side(); ++i)
        if (g.periodic_dist(g.coord(i)) < r) {
          ball.a[i] = 1.0;
          count += 1.0;
        }
    } else {
      for (int ix = 0; ix < g.side(); ++ix)
        for (int iy = 0; iy < g.side(); ++iy)
          if (g.periodic_dist(g.coord(ix), g.coord(iy)) < r) {
            ball.at(ix, iy) = 1.0;
            count += 1.0;
          }
    }
    Field B = fft_forward(ball);
    Field conv(g);
    for (std::size_t i = 0; i < conv.a.size(); ++i) conv.a[i] = spec.a[i] * B.a[i];
    fft_inplace(g, conv.a, FFTW_BACKWARD);
    double scale = 1.0 / (count * double(g.size()));
    for (std::size_t i = 0; i < conv.a.size(); ++i) {
      double avg = conv.a[i].real() * scale;
      double cur = result.a[i].real();
      if (avg > cur) result.a[i] = avg;
    }
  }
  return result;
}

// g_v = sum_k 2^{-|k-v| delta} f_k
inline std::vector<Field> weighted_level_sum(const std::vector<Field>& fs, double delta) {
  std::vector<Field> out;
  out.reserve(fs.size());
  for (std::size_t v = 0; v < fs.size(); ++v) {
    Field acc(fs[0].grid);
    for (std::size_t k = 0; k < fs.size(); ++k) {
      double w = std::pow(2.0, -delta * std::abs(double(k) - double(v)));
      for (std::size_t i = 0; i < acc.a.size(); ++i) acc.a[i] += w * fs[k].a[i];
    }
    out.push_back(std::move(acc));
  }
  return out;
}

// ---------------------------------------------------------------------------
// discrete Hardy inequality: delta_k = sum_{j=J+}^{k} a^{k-j} eps_j with the
// exact constant c(a,q) = 1/(1-a) for q >= 1, (1/(1-a^q))^{1/q} for q < 1
// ---------------------------------------------------------------------------

struct HardyResult {
  std::vector<double> deltas;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
  bool bound_ok = false;
};

inline HardyResult hardy_cascade(const std::vector<double>& eps, double a, int J, double q) {
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("hardy_cascade: need 0 < a < 1");
  if (!(q > 0.0)) throw std::invalid_argument("hardy_cascade: need q > 0");
  // eps[i] carries eps_{J+i}; terms below J+ = max(J,0) do not enter
  std::size_t skip = J < 0 ? std::min<std::size_t>(std::size_t(-J), eps.size()) : 0;
  HardyResult r;
  r.deltas.assign(eps.size() - skip, 0.0);
  double run = 0.0;
  for (std::size_t i = 0; i < r.deltas.size(); ++i) {
    run = a * run + eps[skip + i];
    r.deltas[i] = run;
  }
  auto lq = [&](const double* d, std::size_t n) {
    if (q == inf) {
      double m = 0.0;
      for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(d[i]));
      return m;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (d[i] != 0.0) acc += std::pow(std::abs(d[i]), q);
    return acc == 0.0 ? 0.0 : std::pow(acc, 1.0 / q);
  };
  r.lhs = lq(r.deltas.data(), r.deltas.size());
  double eps_norm = lq(eps.data() + skip, eps.size() - skip);
  r.constant = q >= 1.0 ? 1.0 / (1.0 - a) : std::pow(1.0 / (1.0 - std::pow(a, q)), 1.0 / q);
  r.rhs = r.constant * eps_norm;
  r.bound_ok = r.lhs <= r.rhs * (1.0 + 1e-12);
  return r;
}

// ---------------------------------------------------------------------------
// lemma ratio machinery
// ---------------------------------------------------------------------------

struct RatioStats {
  double rmin = std::numeric_limits<double>::infinity();
  double rmax = 0.0;
  void add(double r) {
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  bool valid() const { return rmax > 0.0 && std::isfinite(rmax) && rmin > 0.0; }
};

// spread of one bracket end across cases
inline double end_spread(const std::vector<double>& ends) {
  double lo = *std::min_element(ends.begin(), ends.end());
  double hi = *std::max_element(ends.begin(), ends.end());
  return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
}

inline RatioStats ratio_stats(const Field& num, const Field& den) {
  RatioStats s;
  for (std::size_t i = 0; i < num.a.size(); ++i) {
    double d = std::abs(den.a[i]);
    if (d <= 0.0) continue;
    s.add(std::abs(num.a[i]) / d);
  }
  return s;
}

struct EtaLemmaCase {
  int v0 = 0, v1 = 0;
  RatioStats stats;
};

struct EtaLemmaReport {
  std::vector<EtaLemmaCase> conv_pair;   // eta_{v0}*eta_{v1} vs eta_{min(v0,v1)}
  std::vector<EtaLemmaCase> cube_avg;    // eta_v*(chi_Q/|Q|) vs eta_v(.-y), y in Q
  std::vector<EtaLemmaCase> three_conv;  // power-r collapse with 2^{(v-j)+ n(1-r)} weight
};

inline Field cube_indicator(const Grid& g, const DyadicCube& Q) {
  Field chi(g);
  for_cube_cells(g, Q, [&](std::size_t i) { chi.a[i] = 1.0; });
  return chi;
}

inline EtaLemmaReport verify_eta_lemmas(const Grid& g, const std::vector<int>& levels,
                                        double m_exp, double r) {
  EtaLemmaReport rep;
  std::vector<Field> etas, etas_mr;
  for (int v : levels) {
    etas.push_back(eta_field(g, v, m_exp));
    etas_mr.push_back(eta_field(g, v, m_exp * r));
  }
  for (std::size_t i = 0; i < levels.size(); ++i)
    for (std::size_t j = i; j < levels.size(); ++j) {
      Field conv = convolve(etas[i], etas[j]);
      const Field& ref = levels[i] <= levels[j] ? etas[i] : etas[j];
      rep.conv_pair.push_back({levels[i], levels[j], ratio_stats(conv, ref)});
    }
  for (std::size_t i = 0; i < levels.size(); ++i) {
    int v = levels[i];
    if (v < -g.J0 || v > g.J) continue;
    int per_axis = cubes_per_axis(g, v);
    DyadicCube Q(v, per_axis / 3, g.dim == 2 ? per_axis / 3 : 0);
    Field chiQ = cube_indicator(g, Q);
    double measQ = std::pow(Q.l(), g.dim);
    Field conv = convolve(etas[i], chiQ);
    for (cplx& z : conv.a) z /= measQ;
    CubeCells cc = cube_cells(g, Q);
    double yx = g.coord(cc.begin[0] + cc.count / 2);
    double yy = g.dim == 2 ? g.coord(cc.begin[1] + cc.count / 2) : 0.0;
    Field ref = eta_field(g, v, m_exp, yx, yy);
    rep.cube_avg.push_back({v, v, ratio_stats(conv, ref)});
  }
  if (m_exp * r > double(g.dim)) {
    for (std::size_t a = 0; a < levels.size(); ++a)
      for (std::size_t b = 0; b < levels.size(); ++b) {
        int jl = levels[a], vl = levels[b];
        if (vl < -g.J0 || vl > g.J) continue;
        int per_axis = cubes_per_axis(g, vl);
        DyadicCube Q(vl, per_axis / 3, g.dim == 2 ? per_axis / 3 : 0);
        Field chiQ = cube_indicator(g, Q);
        Field lhs = convolve(etas[a], convolve(etas[b], chiQ));
        for (cplx& z : lhs.a) z = std::pow(std::abs(z), r);
        Field rhs = convolve(etas_mr[a], convolve(etas_mr[b], chiQ));
        double w = std::pow(2.0, std::max(vl - jl, 0) * g.dim * (1.0 - r));
        for (cplx& z : rhs.a) z *= w;
        rep.three_conv.push_back({jl, vl, ratio_stats(lhs, rhs)});
      }
  }
  return rep;
}

// sup over sampled pairs of 2^{v(alpha(x)-alpha(y))} (1 + 2^v dist)^{-R}
inline double dhr_sup(const Grid& g, const VariableExponent& alpha, int v, double R,
                      int stride = 1) {
  if (alpha.is_inf) throw std::invalid_argument("dhr_sup: alpha must be finite");
  double tv = std::ldexp(1.0, v);
  double best = 0.0;
  auto visit = [&](std::size_t i, std::size_t j, double d) {
    double r =
        std::pow(2.0, v * (alpha.vals[i] - alpha.vals[j])) * std::pow(1.0 + tv * d, -R);
    best = std::max(best, r);
  };
  int N = g.side();
  if (g.dim == 1) {
    int s = std::max(1, stride);
    for (int i = 0; i < N; i += s)
      for (int j = 0; j < N; j += s) {
        if (i == j) continue;
        visit(i, j, g.periodic_dist((i - j) * g.h()));
      }
  } else {
    int s = std::max(stride, N / 64);
    for (int ix = 0; ix < N; ix += s)
      for (int iy = 0; iy < N; iy += s)
        for (int jx = 0; jx < N; jx += s)
          for (int jy = 0; jy < N; jy += s) {
            if (ix == jx && iy == jy) continue;
            visit(g.index(ix, iy), g.index(jx, jy),
                  g.periodic_dist((ix - jx) * g.h(), (iy - jy) * g.h()));
          }
  }
  return best;
}

// Peetre maximal function of u at dilation t: sup_y |u(y)| / (1 + t|y-x|)^m
inline Field peetre_star(const Field& u, double t, double m_exp, int stride = 1) {
  const Grid& g = u.grid;
  Field out(g);
  std::vector<double> absu = magnitudes(u);
  int N = g.side();
  int s = std::max(1, stride);
  if (g.dim == 1) {
    parallel_for(std::size_t(N), [&](std::size_t x) {
      double best = absu[x];
      for (int y = 0; y < N; y += s) {
        double d = g.periodic_dist((double(x) - y) * g.h());
        best = std::max(best, absu[y] * std::pow(1.0 + t * d, -m_exp));
      }
      out.a[x] = best;
    });
  } else {
    parallel_for(std::size_t(N), [&](std::size_t xi) {
      for (int xj = 0; xj < N; ++xj) {
        double best = absu[g.index(int(xi), xj)];
        for (int yi = 0; yi < N; yi += s)
          for (int yj = 0; yj < N; yj += s) {
            double d = g.periodic_dist((double(xi) - yi) * g.h(), (double(xj) - yj) * g.h());
            best = std::max(best, absu[g.index(yi, yj)] * std::pow(1.0 + t * d, -m_exp));
          }
        out.at(int(xi), xj) = best;
      }
    });
  }
  return out;
}

struct RTrickReport {
  double c_conv = 0.0;    // empirical constant in the convolution bound
  double c_peetre = 0.0;  // empirical constant in the Peetre-star bound
  bool finite = false;
};

// |theta_R * omega_N * f| <= c max(1,(N/R)^m) (eta_{N,m} * |omega_N * f|^r)^{1/r}
inline RTrickReport verify_r_trick(const Field& f, const Field& theta, const Field& omega,
                                   double R, double N, double r, double m_exp,
                                   int peetre_stride = 1) {
  const Grid& g = f.grid;
  Field u = convolve(omega, f);
  Field lhs = convolve(theta, u);
  Field w = convolve(eta_field_scaled(g, N, m_exp), abs_pow_field(u, r));
  double pref = std::max(1.0, std::pow(N / R, m_exp));
  RTrickReport rep;
  for (std::size_t i = 0; i < lhs.a.size(); ++i) {
    double den = pref * std::pow(std::max(0.0, w.a[i].real()), 1.0 / r);
    if (den > 0.0) rep.c_conv = std::max(rep.c_conv, std::abs(lhs.a[i]) / den);
  }
  Field ustar = peetre_star(u, N, m_exp, peetre_stride);
  for (std::size_t i = 0; i < ustar.a.size(); ++i) {
    double den = std::max(0.0, w.a[i].real());
    if (den > 0.0)
      rep.c_peetre = std::max(rep.c_peetre, std::pow(ustar.a[i].real(), r) / den);
  }
  rep.finite = std::isfinite(rep.c_conv) && std::isfinite(rep.c_peetre) &&
               rep.c_conv > 0.0 && rep.c_peetre > 0.0;
  return rep;
}

}  // namespace varbesov
