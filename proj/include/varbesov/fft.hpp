#pragma once

#include <fftw3.h>

#include <mutex>
#include <vector>

#include "grid.hpp"

namespace varbesov {

// FFTW plan creation is not thread-safe; execution on distinct buffers is.
inline std::mutex& fftw_plan_mutex() {
  static std::mutex m;
  return m;
}

// In-place unnormalized transform: sign = FFTW_FORWARD or FFTW_BACKWARD.
// Forward: F_k = sum_j f_j exp(-2*pi*i*j*k/N) per axis.
inline void fft_inplace(const Grid& g, std::vector<cplx>& data, int sign) {
  fftw_complex* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    if (g.dim == 1)
      plan = fftw_plan_dft_1d(g.side(), buf, buf, sign, FFTW_ESTIMATE);
    else
      plan = fftw_plan_dft_2d(g.side(), g.side(), buf, buf, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    fftw_destroy_plan(plan);
  }
}

inline Field fft_forward(Field f) {
  fft_inplace(f.grid, f.a, FFTW_FORWARD);
  return f;
}

inline Field fft_backward_normalized(Field f) {
  fft_inplace(f.grid, f.a, FFTW_BACKWARD);
  double inv = 1.0 / double(f.grid.size());
  for (cplx& z : f.a) z *= inv;
  return f;
}

// multiply spectrum bin-wise by a radial transfer evaluated at |xi|
template <typename Transfer>
inline void apply_radial_transfer(Field& spectrum, Transfer&& t) {
  const Grid& g = spectrum.grid;
  if (g.dim == 1) {
    for (int k = 0; k < g.side(); ++k) spectrum.a[k] *= t(g.freq_abs(k));
  } else {
    for (int kx = 0; kx < g.side(); ++kx) {
      std::size_t row = static_cast<std::size_t>(kx) * g.side();
      for (int ky = 0; ky < g.side(); ++ky) spectrum.a[row + ky] *= t(g.freq_abs(kx, ky));
    }
  }
}

}  // namespace varbesov
