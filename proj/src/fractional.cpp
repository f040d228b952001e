#include "ctrw/fractional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ctrw/errors.hpp"
#include "ctrw/powerlaw.hpp"
#include "fft_util.hpp"

namespace ctrw {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

// ------------------------------ lattice field ------------------------------

double FractionalField::mass() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * spacing;
}

FractionalField make_gaussian_field(std::size_t grid_points, double half_width, double sigma) {
  require(grid_points >= 2, "lattice needs at least two points");
  require(half_width > 0.0 && sigma > 0.0, "half_width and sigma must be > 0");
  FractionalField f;
  f.grid_points = grid_points;
  f.spacing = 2.0 * half_width / static_cast<double>(grid_points);
  f.values.resize(grid_points);
  double mass = 0.0;
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double x = f.position(i);
    f.values[i] = std::exp(-0.5 * (x / sigma) * (x / sigma));
    mass += f.values[i];
  }
  // Normalize by the realized lattice sum so the discrete mass is exactly 1.
  const double scale = 1.0 / (mass * f.spacing);
  for (double& v : f.values) v *= scale;
  return f;
}

// --------------------------- transform algebra -----------------------------

std::complex<double> montroll_weiss(double k, double s, std::complex<double> W_of_k,
                                    double Psi_of_s) {
  require(s > 0.0, "rate s must be > 0");
  require(std::abs(W_of_k) <= 1.0 + 1e-12, "|W(k)| must not exceed 1");
  require(Psi_of_s > 0.0 && Psi_of_s <= 1.0, "Psi(s) must lie in (0, 1]");
  const std::complex<double> denom = 1.0 - W_of_k * Psi_of_s;
  if (std::abs(denom) < 1e-15 * (1.0 + std::abs(W_of_k * Psi_of_s)))
    throw NumericalError("propagator pole W(k) Psi(s) = 1 at k=" + std::to_string(k) +
                         ", s=" + std::to_string(s));
  return (1.0 - Psi_of_s) / s / denom;
}

// -------------------------- memory derivative (L1) --------------------------

std::vector<double> caputo_l1(const std::vector<double>& f_samples, double dt, double beta) {
  require(f_samples.size() >= 2, "need at least two samples");
  require(dt > 0.0, "grid spacing must be > 0");
  require(beta > 0.0 && beta < 1.0, "derivative order must lie in (0, 1)");
  const std::size_t n = f_samples.size();
  const double one_minus = 1.0 - beta;
  std::vector<double> b(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j)
    b[j] = std::pow(static_cast<double>(j + 1), one_minus) -
           std::pow(static_cast<double>(j), one_minus);
  const double scale = std::pow(dt, -beta) / std::tgamma(2.0 - beta);
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < i; ++j) acc += b[j] * (f_samples[i - j] - f_samples[i - j - 1]);
    out[i] = scale * acc;
  }
  return out;
}

std::vector<double> caputo_l1(const std::vector<double>& f_samples,
                              const std::vector<double>& t_grid, double beta) {
  require(t_grid.size() == f_samples.size(), "sample and time grids differ in length");
  require(t_grid.size() >= 2, "need at least two samples");
  const double dt = t_grid[1] - t_grid[0];
  require(dt > 0.0, "time grid must be increasing");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    const double step = t_grid[i] - t_grid[i - 1];
    require(std::abs(step - dt) <= 1e-9 * dt,
            "time grid must be uniform (step " + std::to_string(i) + " deviates)");
  }
  return caputo_l1(f_samples, dt, beta);
}

// --------------------- spectral space-fractional operator -------------------

FractionalField riesz_feller_apply(const FractionalField& field, double alpha) {
  require(alpha > 0.0 && alpha <= 2.0, "spatial order must lie in (0, 2]");
  require(field.grid_points >= 2 && field.values.size() == field.grid_points,
          "field lattice is inconsistent");
  require(field.spacing > 0.0, "field spacing must be > 0");
  const std::size_t n = field.grid_points;
  auto modes = detail::fft_r2c(field.values);
  const double dk = kTwoPi / (static_cast<double>(n) * field.spacing);
  for (std::size_t m = 0; m < modes.size(); ++m) {
    const double k = dk * static_cast<double>(m);
    const double symbol = (m == 0) ? 0.0 : -std::pow(k, alpha);
    modes[m] *= symbol;
  }
  FractionalField out;
  out.grid_points = n;
  out.spacing = field.spacing;
  out.values = detail::fft_c2r(modes, n);
  return out;
}

// ---------------------- exact-in-time spectral solution ---------------------

PropagatorGrid solve_fde(const FractionalField& initial, const std::vector<double>& t_values,
                         double alpha, double beta) {
  require(alpha > 0.0 && alpha <= 2.0, "spatial order must lie in (0, 2]");
  require(beta > 0.0 && beta <= 1.0, "temporal order must lie in (0, 1]");
  require(!t_values.empty(), "need at least one output time");
  for (double t : t_values) require(t >= 0.0, "output times must be >= 0");
  require(initial.grid_points >= 2 && initial.values.size() == initial.grid_points,
          "initial lattice is inconsistent");
  if (std::abs(initial.mass() - 1.0) > 1e-8)
    throw ValidationError("initial density must integrate to 1 within 1e-8, got " +
                          std::to_string(initial.mass()));

  const std::size_t n = initial.grid_points;
  const auto modes0 = detail::fft_r2c(initial.values);
  const double dk = kTwoPi / (static_cast<double>(n) * initial.spacing);

  PropagatorGrid grid;
  grid.form = PropagatorGrid::Form::density;
  grid.alpha = alpha;
  grid.beta = beta;
  grid.t_values = t_values;
  grid.axis.resize(n);
  for (std::size_t i = 0; i < n; ++i) grid.axis[i] = initial.position(i);

  std::vector<std::complex<double>> modes(modes0.size());
  for (double t : t_values) {
    const double tb = (t == 0.0) ? 0.0 : std::pow(t, beta);
    for (std::size_t m = 0; m < modes0.size(); ++m) {
      // k = 0 keeps factor 1 exactly: mass is conserved mode-wise.
      double factor = 1.0;
      if (m != 0 && t > 0.0) {
        const double k = dk * static_cast<double>(m);
        factor = mittag_leffler(beta, -std::pow(k, alpha) * tb);
      }
      modes[m] = modes0[m] * factor;
    }
    const auto density = detail::fft_c2r(modes, n);
    auto& row = grid.values.emplace_back();
    row.reserve(n);
    for (double v : density) row.emplace_back(v, 0.0);
  }
  return grid;
}

// ------------------------- Monte Carlo renewal walk -------------------------

PropagatorGrid mc_propagator_char(const McWalkParams& params, std::size_t walkers,
                                  const std::vector<double>& t_values,
                                  const std::vector<double>& k_grid, RngStream& rng) {
  require(walkers >= 1, "need at least one walker");
  require(!t_values.empty() && !k_grid.empty(), "need output times and wavenumbers");
  require(std::is_sorted(t_values.begin(), t_values.end()),
          "output times must be ascending");
  require(t_values.front() >= 0.0, "output times must be >= 0");
  require(params.alpha > 0.0 && params.alpha <= 2.0, "jump order must lie in (0, 2]");
  require(params.beta > 0.0 && params.beta <= 1.0, "wait order must lie in (0, 1]");
  require(params.jump_scale > 0.0 && params.wait_scale > 0.0, "scales must be > 0");

  const bool gaussian_jumps = params.alpha == 2.0;       // classical surrogate
  const bool exponential_waits = params.beta == 1.0;     // classical surrogate
  PowerLawSpec jump_law = gaussian_jumps
                              ? PowerLawSpec{}
                              : PowerLawSpec::length_law(params.alpha, params.jump_scale);
  PowerLawSpec wait_law = exponential_waits
                              ? PowerLawSpec{}
                              : PowerLawSpec::wait_law(params.beta, params.wait_scale);

  const std::size_t nt = t_values.size();
  const std::size_t nk = k_grid.size();
  std::vector<std::vector<std::complex<double>>> acc(nt,
                                                     std::vector<std::complex<double>>(nk));
  std::vector<double> snapshot(nt);

  for (std::size_t w = 0; w < walkers; ++w) {
    RngStream stream = rng.split(w);
    double pos = 0.0;
    double clock = 0.0;
    std::size_t idx = 0;
    // Renewal loop: wait, snapshot every output time that elapses during the
    // wait (the pending jump has not happened yet), then jump.
    while (idx < nt) {
      const double wait = exponential_waits ? params.wait_scale * stream.exponential()
                                            : sample_wait(wait_law, stream);
      clock += wait;
      while (idx < nt && t_values[idx] < clock) snapshot[idx++] = pos;
      if (idx >= nt) break;  // all output times recorded; skip the pending jump
      const double jump = gaussian_jumps ? params.jump_scale * stream.gaussian()
                                         : stream.sign() * sample_length(jump_law, stream);
      pos += jump;
    }
    for (std::size_t i = 0; i < nt; ++i) {
      const double x = snapshot[i];
      for (std::size_t j = 0; j < nk; ++j) {
        const double kx = k_grid[j] * x;
        acc[i][j] += std::complex<double>(std::cos(kx), std::sin(kx));
      }
    }
  }

  PropagatorGrid grid;
  grid.form = PropagatorGrid::Form::characteristic;
  grid.alpha = params.alpha;
  grid.beta = params.beta;
  grid.axis = k_grid;
  grid.t_values = t_values;
  grid.low_statistics = walkers < 10000;
  const double inv_w = 1.0 / static_cast<double>(walkers);
  grid.values.resize(nt);
  for (std::size_t i = 0; i < nt; ++i) {
    grid.values[i].resize(nk);
    for (std::size_t j = 0; j < nk; ++j) grid.values[i][j] = acc[i][j] * inv_w;
  }
  return grid;
}

// ----------------------------- scale fitting --------------------------------

namespace {

// Sum of squared residuals between the empirical row at the largest time and
// the model E_beta(-c |k|^alpha t^beta), over well-conditioned k points.
double fit_objective(const PropagatorGrid& g, double c) {
  const std::size_t it = g.t_values.size() - 1;
  const double tb = std::pow(g.t_values[it], g.beta);
  double ss = 0.0;
  for (std::size_t j = 0; j < g.axis.size(); ++j) {
    const double emp = g.values[it][j].real();
    if (emp < 0.05 || emp > 0.95) continue;
    const double model = mittag_leffler(g.beta, -c * std::pow(std::abs(g.axis[j]), g.alpha) * tb);
    const double r = emp - model;
    ss += r * r;
  }
  return ss;
}

}  // namespace

double fit_propagator_scale(const PropagatorGrid& empirical) {
  require(empirical.form == PropagatorGrid::Form::characteristic,
          "scale fit needs a characteristic-function grid");
  require(!empirical.t_values.empty() && empirical.t_values.back() > 0.0,
          "scale fit needs a positive recorded time");
  // Coarse log grid bracket, then golden-section refinement; both stages are
  // fully deterministic.
  double best_c = 1.0, best_v = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 160; ++i) {
    const double c = std::pow(10.0, -3.0 + 0.025 * i);
    const double v = fit_objective(empirical, c);
    if (v < best_v) {
      best_v = v;
      best_c = c;
    }
  }
  double lo = best_c / std::pow(10.0, 0.025);
  double hi = best_c * std::pow(10.0, 0.025);
  const double gr = 0.6180339887498948482;
  double a = lo, b = hi;
  double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
  double f1 = fit_objective(empirical, c1), f2 = fit_objective(empirical, c2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      b = c2; c2 = c1; f2 = f1;
      c1 = b - gr * (b - a);
      f1 = fit_objective(empirical, c1);
    } else {
      a = c1; c1 = c2; f1 = f2;
      c2 = a + gr * (b - a);
      f2 = fit_objective(empirical, c2);
    }
  }
  return 0.5 * (a + b);
}

double propagator_sup_deviation(const PropagatorGrid& empirical, double scale,
                                std::size_t t_index) {
  require(t_index < empirical.t_values.size(), "time row out of range");
  const double tb = std::pow(empirical.t_values[t_index], empirical.beta);
  double sup = 0.0;
  for (std::size_t j = 0; j < empirical.axis.size(); ++j) {
    const double model =
        (empirical.t_values[t_index] == 0.0)
            ? 1.0
            : mittag_leffler(empirical.beta,
                             -scale * std::pow(std::abs(empirical.axis[j]), empirical.alpha) * tb);
    sup = std::max(sup, std::abs(empirical.values[t_index][j].real() - model));
  }
  return sup;
}

}  // namespace ctrw
