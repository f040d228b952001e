#include "ctrw/efficiency.hpp"

#include <cmath>
#include <string>

#include "ctrw/errors.hpp"

namespace ctrw {

// ------------------------------- validation --------------------------------

void SearchParams::validate() const {
  require(r_v > 0.0, "r_v must be > 0");
  require(lambda > r_v, "lambda must exceed r_v");
  require(T > 0.0, "T must be > 0");
  require(alpha > 0.0 && alpha < 2.0, "alpha must lie in (0, 2), got " + std::to_string(alpha));
  require(beta >= 0.0 && beta < 1.0, "beta must lie in [0, 1), got " + std::to_string(beta));
  require(mu > 1.0 && mu < 3.0, "mu must lie in (1, 3), got " + std::to_string(mu));
}

// --------------------------- elementary integrals ---------------------------
//
// Every integral below is a pure power function; the antiderivative limits
// are evaluated symbolically. The alpha = 1 (and mu = 2) logarithmic cases
// are handled through expm1 so the expressions stay continuous across the
// removable singularity instead of 0/0.

// int_{r_v}^{lambda} l^(-a) dl  ==  r_v^(1-a) * expm1((1-a) ln(lambda/r_v)) / (1-a)
static double truncated_travel_integral(double r_v, double lambda, double a) {
  const double log_ratio = std::log(lambda / r_v);
  const double one_minus = 1.0 - a;
  if (std::abs(one_minus) < 1e-12) return std::pow(r_v, one_minus) * log_ratio;
  return std::pow(r_v, one_minus) * std::expm1(one_minus * log_ratio) / one_minus;
}

double mean_cost_lt_closed(const SearchParams& p) {
  p.validate();
  if (p.alpha == 1.0)
    throw NumericalError("combined-cost closed form is singular at alpha = 1; use the antiderivative form");
  const double a = p.alpha, b = p.beta;
  const double lt = std::pow(p.lambda, 1.0 - a) * std::pow(p.r_v, a);
  return a * b * p.T / ((1.0 - a) * (1.0 - b)) * (lt - p.r_v) + p.T * lt;
}

double mean_cost_lt_quadrature(const SearchParams& p) {
  p.validate();
  const double a = p.alpha, b = p.beta;
  // Travel factors: truncated direct part and the tail part charged at the
  // truncation length.
  const double i1 = truncated_travel_integral(p.r_v, p.lambda, a);     // int_{r_v}^{lambda} l^(-a) dl
  const double i2 = std::pow(p.lambda, 1.0 - a) / a;                   // lambda int_{lambda}^inf l^(-a-1) dl
  const double d1 = std::pow(p.r_v, -a) / a;                           // int_{r_v}^inf l^(-a-1) dl
  if (b == 0.0) {
    // Continuous limit of the full expression: the tail wait term dominates
    // both the numerator and the wait normalizer, leaving a flat factor T.
    return p.T * i2 / d1;
  }
  const double j1 = std::pow(p.T, 1.0 - b) / (1.0 - b);                // int_0^T t^(-b) dt
  const double j2 = std::pow(p.T, 1.0 - b) / b;                        // T int_T^inf t^(-b-1) dt
  const double d2 = std::pow(p.T, -b) / b;                             // int_T^inf t^(-b-1) dt
  return (i1 * j1 + i2 * j2) / (d1 * d2);
}

// Truncated mean flight length: direct part up to lambda plus the tail
// charged at lambda, normalized by the full tail mass from r_v.
static double mean_length_truncated(double r_v, double lambda, double walk_exponent_mu) {
  const double a = walk_exponent_mu - 1.0;  // tail index of the length law
  const double i1 = truncated_travel_integral(r_v, lambda, a);
  const double i2 = std::pow(lambda, 1.0 - a) / a;
  const double d1 = std::pow(r_v, -a) / a;
  return (i1 + i2) / d1;
}

double n_destructive(const SearchParams& p) {
  p.validate();
  return std::pow(p.lambda / p.r_v, p.alpha);
}

double n_nondestructive(const SearchParams& p) {
  p.validate();
  return std::pow(p.lambda / p.r_v, 0.5 * p.alpha);
}

// ----------------------------- efficiencies --------------------------------

EfficiencyResult eta_ctrw(const SearchParams& p, Regime regime) {
  p.validate();
  EfficiencyResult r;
  r.regime = regime;
  r.method = Method::quadrature;
  r.n_mean = (regime == Regime::destructive) ? n_destructive(p) : n_nondestructive(p);
  if (p.beta == 0.0) {
    // Reduction mode: waiting costs dropped, efficiency per unit distance.
    // Identical to the length-only baseline at mu = alpha + 1.
    r.cost_mean = mean_length_truncated(p.r_v, p.lambda, p.alpha + 1.0);
  } else {
    r.cost_mean = mean_cost_lt_quadrature(p);
  }
  r.eta = 1.0 / (r.n_mean * r.cost_mean);
  return r;
}

EfficiencyResult eta_levy(const SearchParams& p, Regime regime) {
  p.validate();
  EfficiencyResult r;
  r.regime = regime;
  r.method = Method::quadrature;
  const double ratio = p.lambda / p.r_v;
  r.n_mean = (regime == Regime::destructive) ? std::pow(ratio, p.mu - 1.0)
                                             : std::pow(ratio, 0.5 * (p.mu - 1.0));
  r.cost_mean = mean_length_truncated(p.r_v, p.lambda, p.mu);
  r.eta = 1.0 / (r.n_mean * r.cost_mean);
  return r;
}

// ------------------------------ grid search --------------------------------

std::vector<double> uniform_axis(double lo, double hi, double step) {
  require(step > 0.0, "axis step must be > 0");
  require(hi >= lo, "axis upper end must be >= lower end");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
  std::vector<double> v;
  v.reserve(count);
  for (std::size_t i = 0; i < count; ++i) v.push_back(lo + static_cast<double>(i) * step);
  return v;
}

std::vector<double> GridSpec::alpha_values() const {
  return uniform_axis(alpha_min, alpha_max, alpha_step);
}

std::vector<double> GridSpec::beta_values() const {
  return uniform_axis(beta_min, beta_max, beta_step);
}

Optimum find_optimum(Regime regime, double lambda, double r_v, double T, const GridSpec& grid) {
  const auto alphas = grid.alpha_values();
  const auto betas = grid.beta_values();
  require(!alphas.empty() && !betas.empty(), "find_optimum: empty lattice");
  SearchParams p;
  p.r_v = r_v;
  p.lambda = lambda;
  p.T = T;
  Optimum best;
  bool first = true;
  for (double a : alphas) {
    for (double b : betas) {
      p.alpha = a;
      p.beta = b;
      const double eta = eta_ctrw(p, regime).eta;
      // Strict comparison keeps the first (lexicographically smallest)
      // maximizer on exact ties.
      if (first || eta > best.eta) {
        best = Optimum{a, b, eta};
        first = false;
      }
    }
  }
  return best;
}

}  // namespace ctrw
