#pragma once

// Thin deterministic wrappers around FFTW's 1-D real transforms. Plans use
// FFTW_ESTIMATE so planning is reproducible (FFTW_MEASURE would time-tune
// and could change the algorithm between runs).

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <vector>

namespace ctrw::detail {

// Forward real-to-complex DFT: n reals -> n/2 + 1 non-redundant modes.
inline std::vector<std::complex<double>> fft_r2c(const std::vector<double>& in) {
  const std::size_t n = in.size();
  const std::size_t nm = n / 2 + 1;
  double* buf = fftw_alloc_real(n);
  fftw_complex* out = fftw_alloc_complex(nm);
  for (std::size_t i = 0; i < n; ++i) buf[i] = in[i];
  fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), buf, out, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  std::vector<std::complex<double>> modes(nm);
  for (std::size_t m = 0; m < nm; ++m) modes[m] = {out[m][0], out[m][1]};
  fftw_free(buf);
  fftw_free(out);
  return modes;
}

// Inverse complex-to-real DFT with the 1/n normalization applied, so
// fft_c2r(fft_r2c(x), x.size()) == x up to roundoff.
inline std::vector<double> fft_c2r(const std::vector<std::complex<double>>& modes,
                                   std::size_t n) {
  const std::size_t nm = n / 2 + 1;
  fftw_complex* in = fftw_alloc_complex(nm);
  double* out = fftw_alloc_real(n);
  for (std::size_t m = 0; m < nm; ++m) {
    in[m][0] = modes[m].real();
    in[m][1] = modes[m].imag();
  }
  fftw_plan plan = fftw_plan_dft_c2r_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  std::vector<double> result(n);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) result[i] = out[i] * scale;
  fftw_free(in);
  fftw_free(out);
  return result;
}

}  // namespace ctrw::detail
