#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace varbesov {

inline constexpr double pi = 3.14159265358979323846;

// Periodic grid on the box [0, 2^J0)^dim with spacing h = 2^-J.
// Mode k (signed, per axis) carries the frequency xi = 2*pi*k / 2^J0, so the
// band |xi| <= 2^(V+1) of the finest usable filter level V = J-2 sits strictly
// inside the corner-sampling Nyquist band (2 < pi).
struct Grid {
  int dim = 1;  // 1 or 2
  int J0 = 0;   // box side 2^J0
  int J = 8;    // spacing 2^-J

  Grid() = default;
  Grid(int dim_, int J0_, int J_) : dim(dim_), J0(J0_), J(J_) {
    if (dim < 1 || dim > 2) throw std::invalid_argument("grid: dim must be 1 or 2");
    if (J0 < 0 || J < 1 || J0 + J > 24) throw std::invalid_argument("grid: bad J0/J");
  }

  int side() const { return 1 << (J0 + J); }
  std::size_t size() const {
    std::size_t s = static_cast<std::size_t>(side());
    return dim == 1 ? s : s * s;
  }
  double h() const { return std::ldexp(1.0, -J); }
  double box() const { return double(1 << J0); }
  double cell_measure() const { return dim == 1 ? h() : h() * h(); }
  double box_measure() const { return dim == 1 ? box() : box() * box(); }
  int max_level() const { return J - 2; }  // V

  double coord(int i) const { return i * h(); }

  // coordinates of a flat sample index
  std::array<double, 2> cell_coords(std::size_t flat) const {
    if (dim == 1) return {coord(static_cast<int>(flat)), 0.0};
    std::size_t N = static_cast<std::size_t>(side());
    return {coord(static_cast<int>(flat / N)), coord(static_cast<int>(flat % N))};
  }

  std::size_t index(int ix, int iy = 0) const {
    return dim == 1 ? static_cast<std::size_t>(ix)
                    : static_cast<std::size_t>(ix) * side() + iy;
  }

  // signed mode number for FFT bin k in [0, side)
  int signed_mode(int k) const { return k < side() / 2 ? k : k - side(); }
  double freq_of_mode(int km) const { return 2.0 * pi * km / box(); }

  // |xi| for FFT bin (kx[, ky])
  double freq_abs(int kx, int ky = 0) const {
    double fx = freq_of_mode(signed_mode(kx));
    if (dim == 1) return std::abs(fx);
    double fy = freq_of_mode(signed_mode(ky));
    return std::hypot(fx, fy);
  }

  // shortest distance on the periodic axis
  double axis_dist(double d) const {
    double L = box();
    d = std::fmod(std::abs(d), L);
    return std::min(d, L - d);
  }
  double periodic_dist(double dx, double dy = 0.0) const {
    double ax = axis_dist(dx);
    if (dim == 1) return ax;
    double ay = axis_dist(dy);
    return std::hypot(ax, ay);
  }

  bool operator==(const Grid& o) const { return dim == o.dim && J0 == o.J0 && J == o.J; }
  bool operator!=(const Grid& o) const { return !(*this == o); }
};

using cplx = std::complex<double>;

struct Field {
  Grid grid;
  std::vector<cplx> a;

  Field() = default;
  explicit Field(const Grid& g) : grid(g), a(g.size(), cplx{0.0, 0.0}) {}
  Field(const Grid& g, std::vector<cplx> v) : grid(g), a(std::move(v)) {
    if (a.size() != g.size()) throw std::invalid_argument("field: size mismatch");
  }

  cplx& at(int ix, int iy = 0) { return a[grid.index(ix, iy)]; }
  const cplx& at(int ix, int iy = 0) const { return a[grid.index(ix, iy)]; }

  double max_abs() const {
    double m = 0.0;
    for (const cplx& z : a) m = std::max(m, std::abs(z));
    return m;
  }
  bool all_finite() const {
    for (const cplx& z : a)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

  Field& operator+=(const Field& o) {
    if (grid != o.grid) throw std::invalid_argument("field: grid mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += o.a[i];
    return *this;
  }
  Field& operator-=(const Field& o) {
    if (grid != o.grid) throw std::invalid_argument("field: grid mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= o.a[i];
    return *this;
  }
  Field& operator*=(cplx c) {
    for (cplx& z : a) z *= c;
    return *this;
  }
};

inline Field operator+(Field f, const Field& g) { return f += g; }
inline Field operator-(Field f, const Field& g) { return f -= g; }
inline Field operator*(cplx c, Field f) { return f *= c; }

inline std::vector<double> magnitudes(const Field& f) {
  std::vector<double> m(f.a.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::abs(f.a[i]);
  return m;
}

// rectangle rule; exact for band-limited integrands below Nyquist
inline cplx integrate(const Field& f) {
  cplx s{0.0, 0.0};
  for (const cplx& z : f.a) s += z;
  return s * f.grid.cell_measure();
}

inline Field sample(const Grid& g, const std::function<cplx(double, double)>& fn) {
  Field f(g);
  if (g.dim == 1) {
    for (int i = 0; i < g.side(); ++i) f.a[i] = fn(g.coord(i), 0.0);
  } else {
    for (int ix = 0; ix < g.side(); ++ix)
      for (int iy = 0; iy < g.side(); ++iy) f.at(ix, iy) = fn(g.coord(ix), g.coord(iy));
  }
  return f;
}

// Dyadic cube Q_{v,m} = 2^-v([0,1)^n + m); valid levels -J0 <= v <= J.
struct DyadicCube {
  int level = 0;
  std::array<int, 2> m{0, 0};

  DyadicCube() = default;
  DyadicCube(int v, int m0, int m1 = 0) : level(v), m{m0, m1} {}

  double l() const { return std::ldexp(1.0, -level); }
  int v_plus() const { return std::max(level, 0); }
  std::array<double, 2> corner() const { return {m[0] * l(), m[1] * l()}; }
};

inline int cubes_per_axis(const Grid& g, int v) {
  if (v < -g.J0 || v > g.J) throw std::invalid_argument("cube level out of range");
  return 1 << (g.J0 + v);
}

inline int cells_per_axis(const Grid& g, int v) { return 1 << (g.J - v); }

inline std::vector<DyadicCube> cubes_at_level(const Grid& g, int v) {
  int n = cubes_per_axis(g, v);
  std::vector<DyadicCube> out;
  if (g.dim == 1) {
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.emplace_back(v, i);
  } else {
    out.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out.emplace_back(v, i, j);
  }
  return out;
}

struct CubeGeometry {
  double l;
  std::array<double, 2> x_Q;
  int v_Q;
  int v_Q_plus;
  double measure;
};

inline CubeGeometry cube_geometry(const Grid& g, const DyadicCube& Q) {
  CubeGeometry cg;
  cg.l = Q.l();
  cg.x_Q = Q.corner();
  cg.v_Q = Q.level;
  cg.v_Q_plus = Q.v_plus();
  cg.measure = g.dim == 1 ? cg.l : cg.l * cg.l;
  return cg;
}

// concentric dilation rQ as a half-open coordinate box (may extend past the torus seam)
struct CubeRegion {
  std::array<double, 2> lo{0.0, 0.0};
  std::array<double, 2> hi{0.0, 0.0};
};

inline CubeRegion scale_cube(const DyadicCube& Q, double r) {
  if (r <= 0) throw std::invalid_argument("scale_cube: r must be positive");
  CubeRegion reg;
  for (int ax = 0; ax < 2; ++ax) {
    double c = (Q.m[ax] + 0.5) * Q.l();
    reg.lo[ax] = c - 0.5 * r * Q.l();
    reg.hi[ax] = c + 0.5 * r * Q.l();
  }
  return reg;
}

// grid-index window of Q: per-axis [begin, begin + count)
struct CubeCells {
  std::array<int, 2> begin{0, 0};
  int count = 0;
};

inline CubeCells cube_cells(const Grid& g, const DyadicCube& Q) {
  CubeCells c;
  c.count = cells_per_axis(g, Q.level);
  for (int ax = 0; ax < g.dim; ++ax) c.begin[ax] = Q.m[ax] * c.count;
  return c;
}

// iterate flat indices of a cube's cells
template <typename F>
inline void for_cube_cells(const Grid& g, const DyadicCube& Q, F&& fn) {
  CubeCells c = cube_cells(g, Q);
  if (g.dim == 1) {
    for (int i = 0; i < c.count; ++i) fn(static_cast<std::size_t>(c.begin[0] + i));
  } else {
    for (int i = 0; i < c.count; ++i) {
      std::size_t row = static_cast<std::size_t>(c.begin[0] + i) * g.side();
      for (int j = 0; j < c.count; ++j) fn(row + c.begin[1] + j);
    }
  }
}

}  // namespace varbesov
