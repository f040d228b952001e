#pragma once

#include <cstddef>
#include <vector>

namespace ctrw {

enum class Regime { destructive, nondestructive };
enum class Method { closed_form, quadrature, monte_carlo };

// Full parameter vector shared by the analytic formulas and the simulator.
//   r_v    visibility radius (length)
//   lambda mean free path (length), > r_v
//   T      mean wait time (time)
//   alpha  flight-length tail index, (0, 2)
//   beta   waiting-time tail index, [0, 1); beta = 0 selects the reduction
//          mode in which waiting costs are dropped and efficiency is per
//          unit distance only
//   mu     walk exponent of the length-only baseline, (1, 3)
struct SearchParams {
  double r_v = 1.0;
  double lambda = 1e3;
  double T = 5.0;
  double alpha = 1.0;
  double beta = 0.5;
  double mu = 2.0;

  void validate() const;  // throws ValidationError on any domain breach
};

// Efficiency with its decomposition. eta * n_mean * cost_mean = 1 for the
// analytic methods. Units: eta is 1/(length*time) when waiting costs are
// active, 1/length for the length-only baseline and the beta = 0 reduction.
struct EfficiencyResult {
  double eta = 0.0;
  double n_mean = 0.0;     // mean flights between captures
  double cost_mean = 0.0;  // <LT> (length*time) or <L> (length)
  Regime regime = Regime::nondestructive;
  Method method = Method::quadrature;
};

// Mean cost per flight, combined travel-and-wait form, as a single printed
// closed expression:
//   alpha*beta*T / ((1-alpha)(1-beta)) * (lambda^(1-alpha) r_v^alpha - r_v)
//     + T lambda^(1-alpha) r_v^alpha.
// Throws NumericalError at alpha == 1 (removable singularity; use the
// antiderivative form there).
double mean_cost_lt_closed(const SearchParams& p);

// Same quantity evaluated from the exact antiderivatives of the elementary
// power integrals; continuous across alpha = 1 and defined for beta in
// [0, 1) (beta -> 0 limit: T * lambda^(1-alpha) * r_v^alpha).
double mean_cost_lt_quadrature(const SearchParams& p);

// Mean flight counts between captures: (lambda/r_v)^alpha when targets are
// consumed, (lambda/r_v)^(alpha/2) when they are revisitable.
double n_destructive(const SearchParams& p);
double n_nondestructive(const SearchParams& p);

// Combined-cost search efficiency eta = 1 / (N * <LT>). At beta = 0 the
// waiting factor is dropped entirely (reduction mode): eta = 1 / (N * <L>)
// with <L> the truncated mean flight length, identical to eta_levy at
// mu = alpha + 1.
EfficiencyResult eta_ctrw(const SearchParams& p, Regime regime);

// Length-only baseline over the walk exponent mu:
//   <L> = [ int_{r_v}^{lambda} l^(1-mu) dl + lambda int_{lambda}^inf l^(-mu) dl ]
//         / int_{r_v}^inf l^(-mu) dl,
//   N   = (lambda/r_v)^(mu-1) or (lambda/r_v)^((mu-1)/2).
EfficiencyResult eta_levy(const SearchParams& p, Regime regime);

// Inclusive uniform axis lo, lo+step, ..., hi (endpoints honored with a
// half-step rounding guard).
std::vector<double> uniform_axis(double lo, double hi, double step);

// Rectangular (alpha, beta) lattice for optimum location and sweeps.
struct GridSpec {
  double alpha_min = 0.1, alpha_max = 1.9, alpha_step = 0.01;
  double beta_min = 0.1, beta_max = 0.9, beta_step = 0.01;

  std::vector<double> alpha_values() const;
  std::vector<double> beta_values() const;
};

struct Optimum {
  double alpha = 0.0;
  double beta = 0.0;
  double eta = 0.0;
};

// Exhaustive lattice argmax of eta_ctrw; deterministic tie-break to the
// lexicographically smallest (alpha, beta). Throws ValidationError on an
// empty lattice.
Optimum find_optimum(Regime regime, double lambda, double r_v, double T, const GridSpec& grid);

}  // namespace ctrw
