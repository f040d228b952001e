#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "ctrw/rng.hpp"

namespace ctrw {

// ----------------------------- domain types --------------------------------

// Characteristic-function or density values of a walk propagator over a
// (wavenumber, time) or (position, time) lattice.
struct PropagatorGrid {
  enum class Form { characteristic, density };
  Form form = Form::characteristic;
  std::vector<double> axis;     // wavenumbers k, or positions x in density form
  std::vector<double> t_values;
  std::vector<std::vector<std::complex<double>>> values;  // [time][axis point]
  double alpha = 0.0;
  double beta = 0.0;
  bool low_statistics = false;  // set by the Monte Carlo path below 1e4 walkers
};

// Real density samples on a uniform periodic 1-D lattice centered at 0:
// x_i = (i - n/2) * spacing for i in [0, n).
struct FractionalField {
  std::size_t grid_points = 0;
  double spacing = 0.0;
  std::vector<double> values;

  double position(std::size_t i) const {
    return (static_cast<double>(i) - 0.5 * static_cast<double>(grid_points)) * spacing;
  }
  double mass() const;  // sum(values) * spacing
};

// Unit-mass Gaussian bump centered mid-lattice; convenient normalized
// initial condition for the evolution tests.
FractionalField make_gaussian_field(std::size_t grid_points, double half_width, double sigma);

// ------------------------ one-parameter relaxation -------------------------

// E_beta(z) = sum_n z^n / Gamma(beta n + 1) on the completely monotone
// branch: beta in (0, 1], z <= 0. Two evaluation paths: the power series in
// arbitrary-precision arithmetic (hardware floats lose up to hundreds of
// digits to cancellation near the largest term), and the spectral-density
// integral
//   E_beta(-x) = sin(beta pi)/(beta pi) *
//                int_0^inf exp(-(x v)^(1/beta)) / (v^2 + 2 v cos(beta pi) + 1) dv
// valid for all x > 0. The dispatcher uses the series for |z| <= 5 whenever
// the peak-term scan says it is affordable, and the integral otherwise;
// beta = 1 is the exponential limit exp(z) (the spectral density degenerates
// to a point mass there). Throws ValidationError outside the domain.
double mittag_leffler(double beta, double z);

// Individual branches, exposed so the overlap region can be cross-checked;
// same domain rules, but the series throws NumericalError when the peak
// scan deems it unaffordable and the integral requires beta < 1.
double mittag_leffler_series(double beta, double z);
double mittag_leffler_integral(double beta, double z);

// ------------------------- transform-space algebra -------------------------

// Walk propagator in joint transform space:
//   P(k, s) = (1 - Psi(s)) / s * 1 / (1 - W(k) Psi(s)).
// k is carried for error context only; W and Psi are the caller-evaluated
// jump characteristic function and wait-time Laplace transform. Throws
// NumericalError at the (k -> 0, s -> 0) pole where W Psi = 1.
std::complex<double> montroll_weiss(double k, double s, std::complex<double> W_of_k,
                                    double Psi_of_s);

// Mode factor of the fractional evolution: E_beta(-|k|^alpha t^beta), the
// time-domain inverse of s^(beta-1) / (s^beta + |k|^alpha). alpha in (0, 2],
// beta in (0, 1], t >= 0.
double propagator_char(double k, double t, double alpha, double beta);

// ------------------------- fractional operators ----------------------------

// L1 discretization of the memory derivative of order beta in (0, 1) on a
// uniform grid with spacing dt:
//   (D^beta f)(t_n) = dt^(-beta)/Gamma(2-beta) *
//                     sum_{j=0}^{n-1} b_j (f_{n-j} - f_{n-j-1}),
//   b_j = (j+1)^(1-beta) - j^(1-beta).
// out[0] = 0; converges at order 2 - beta for smooth f; exact for constants
// and for linear f.
std::vector<double> caputo_l1(const std::vector<double>& f_samples, double dt, double beta);

// Overload taking the time grid itself; throws ValidationError if the grid
// is not uniform.
std::vector<double> caputo_l1(const std::vector<double>& f_samples,
                              const std::vector<double>& t_grid, double beta);

// Symmetric space-fractional derivative on the periodic lattice, applied
// spectrally: multiply mode m by -|k_m|^alpha with k_m = 2 pi m / (n h).
// alpha in (0, 2]; alpha = 2 reproduces the second derivative. Output is
// real by conjugate symmetry and sums to zero (the k = 0 symbol is 0).
FractionalField riesz_feller_apply(const FractionalField& field, double alpha);

// Exact-in-time spectral solution of the order-(beta, alpha) diffusion
// equation: every Fourier mode evolves as
//   p_hat(k_m, t) = E_beta(-|k_m|^alpha t^beta) * p_hat(k_m, 0).
// Requires unit initial mass within 1e-8 (ValidationError otherwise) and a
// lattice wide enough that boundary density stays negligible at the final
// time (caller's responsibility; see make_gaussian_field). Mass is conserved
// exactly mode-wise. Returns the density over (x, t).
PropagatorGrid solve_fde(const FractionalField& initial, const std::vector<double>& t_values,
                         double alpha, double beta);

// ------------------------ Monte Carlo cross-check --------------------------

// 1-D renewal walk: wait first (power-law index beta, scale wait_scale),
// then jump (symmetric power-law index alpha, scale jump_scale). Surrogate
// limits for the classical sanity check: alpha = 2 draws Gaussian jumps
// (sigma = jump_scale) and beta = 1 draws exponential waits (mean =
// wait_scale).
struct McWalkParams {
  double alpha = 1.0;
  double beta = 0.5;
  double jump_scale = 1.0;
  double wait_scale = 1.0;
};

// Simulates `walkers` independent walks, records positions at each time in
// t_values (ascending), and returns the empirical characteristic function
// over k_grid. values[t][k] = mean over walkers of exp(i k x(t)); exactly 1
// at k = 0 and at t = 0. Sets low_statistics below 1e4 walkers.
PropagatorGrid mc_propagator_char(const McWalkParams& params, std::size_t walkers,
                                  const std::vector<double>& t_values,
                                  const std::vector<double>& k_grid, RngStream& rng);

// Least-squares fit of the single scale factor c mapping the empirical
// characteristic function onto E_beta(-c |k|^alpha t^beta), using the
// largest recorded time and the k points where the empirical value is well
// conditioned (in [0.05, 0.95]). Deterministic coarse-log-grid + golden
// section refinement.
double fit_propagator_scale(const PropagatorGrid& empirical);

// Sup over the k grid of |Re emp - E_beta(-c |k|^alpha t^beta)| at one
// recorded time row.
double propagator_sup_deviation(const PropagatorGrid& empirical, double scale,
                                std::size_t t_index);

}  // namespace ctrw
