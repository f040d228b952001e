#include "ctrw/powerlaw.hpp"

#include <cmath>
#include <string>

#include "ctrw/errors.hpp"

namespace ctrw {

// ---------------------------- spec construction ----------------------------

static void check_cutoff(double cutoff) {
  require(cutoff > 0.0, "power-law lower cutoff must be > 0, got " + std::to_string(cutoff));
}

PowerLawSpec PowerLawSpec::length_law(double alpha, double cutoff) {
  require(alpha > 0.0 && alpha < 2.0,
          "length tail index must lie in (0, 2), got " + std::to_string(alpha));
  check_cutoff(cutoff);
  return PowerLawSpec{alpha, cutoff, TailRole::length};
}

PowerLawSpec PowerLawSpec::wait_law(double beta, double cutoff) {
  require(beta > 0.0 && beta < 1.0,
          "wait tail index must lie in (0, 1), got " + std::to_string(beta));
  check_cutoff(cutoff);
  return PowerLawSpec{beta, cutoff, TailRole::wait};
}

// ------------------------------- sampling ----------------------------------

double powerlaw_quantile(const PowerLawSpec& spec, double u) {
  require(u > 0.0 && u <= 1.0, "quantile argument must lie in (0, 1]");
  return spec.lower_cutoff * std::pow(u, -1.0 / spec.exponent);
}

double sample_length(const PowerLawSpec& spec, RngStream& rng) {
  require(spec.role == TailRole::length, "sample_length needs a length-role spec");
  return powerlaw_quantile(spec, rng.uniform_open01());
}

double sample_wait(const PowerLawSpec& spec, RngStream& rng) {
  require(spec.role == TailRole::wait, "sample_wait needs a wait-role spec");
  return powerlaw_quantile(spec, rng.uniform_open01());
}

Vec2 sample_direction_2d(RngStream& rng) {
  const double theta = rng.uniform01() * 6.283185307179586476925286766559;
  return Vec2{std::cos(theta), std::sin(theta)};
}

// ------------------------- empirical transforms ----------------------------

std::vector<std::complex<double>> empirical_char_length(const std::vector<double>& samples,
                                                        const std::vector<double>& k_grid) {
  require(!samples.empty(), "empirical_char_length: empty sample set");
  std::vector<std::complex<double>> out;
  out.reserve(k_grid.size());
  const double inv_n = 1.0 / static_cast<double>(samples.size());
  for (double k : k_grid) {
    if (k == 0.0) {
      out.emplace_back(1.0, 0.0);  // exp(0) averaged is exactly 1
      continue;
    }
    double acc = 0.0;
    for (double l : samples) acc += std::cos(k * l);
    out.emplace_back(acc * inv_n, 0.0);
  }
  return out;
}

std::vector<double> empirical_laplace_wait(const std::vector<double>& samples,
                                           const std::vector<double>& s_grid) {
  require(!samples.empty(), "empirical_laplace_wait: empty sample set");
  std::vector<double> out;
  out.reserve(s_grid.size());
  const double inv_n = 1.0 / static_cast<double>(samples.size());
  for (double s : s_grid) {
    require(s >= 0.0, "empirical_laplace_wait: rates must be >= 0");
    if (s == 0.0) {
      out.push_back(1.0);
      continue;
    }
    double acc = 0.0;
    for (double t : samples) acc += std::exp(-s * t);
    out.push_back(acc * inv_n);
  }
  return out;
}

}  // namespace ctrw
