#pragma once

#include <complex>
#include <vector>

#include "ctrw/rng.hpp"
#include "ctrw/vec2.hpp"

namespace ctrw {

// Which heavy-tailed law a spec describes. Flight lengths admit tail indices
// in (0, 2); waiting times require (0, 1).
enum class TailRole { length, wait };

// Pareto law with survival P(X > x) = (x / cutoff)^(-exponent) for
// x >= cutoff. Construct through the named factories, which validate the
// exponent range for the role.
struct PowerLawSpec {
  double exponent = 1.0;      // tail index (alpha for lengths, beta for waits)
  double lower_cutoff = 1.0;  // strictly positive scale; smallest emitted value
  TailRole role = TailRole::length;

  static PowerLawSpec length_law(double alpha, double cutoff);
  static PowerLawSpec wait_law(double beta, double cutoff);
};

// Inverse-CDF quantile: cutoff * u^(-1/exponent) for u in (0, 1]. Exposed so
// tests can pin exact arithmetic without touching an engine.
double powerlaw_quantile(const PowerLawSpec& spec, double u);

// One flight length >= cutoff; requires a length-role spec.
double sample_length(const PowerLawSpec& spec, RngStream& rng);

// One waiting time >= cutoff; requires a wait-role spec.
double sample_wait(const PowerLawSpec& spec, RngStream& rng);

// Unit vector with angle uniform on [0, 2*pi).
Vec2 sample_direction_2d(RngStream& rng);

// Empirical characteristic function of symmetrized lengths,
//   W(k) = mean over samples of (exp(ikl) + exp(-ikl)) / 2 = mean cos(k l).
// The +/- symmetrization is applied analytically, so the imaginary part is
// exactly zero and W(0) = 1 exactly. For small k, 1 - W(k) ~ |k|^alpha.
std::vector<std::complex<double>> empirical_char_length(const std::vector<double>& samples,
                                                        const std::vector<double>& k_grid);

// Empirical Laplace transform of waiting times, Psi(s) = mean exp(-s t),
// s >= 0. Psi(0) = 1 exactly; for small s, 1 - Psi(s) ~ s^beta.
std::vector<double> empirical_laplace_wait(const std::vector<double>& samples,
                                           const std::vector<double>& s_grid);

}  // namespace ctrw
