#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature on a finite interval. The 7-point
// Gauss result embedded in the 15-point Kronrod rule gives a per-interval
// error estimate; intervals are bisected recursively until the estimate
// meets the (relative, absolute) target. Deterministic: same inputs, same
// evaluation points, same result.

#include <cmath>
#include <utility>

namespace ctrw::detail {

// Kronrod abscissae on [0, 1] side of the symmetric rule and their weights;
// the odd-indexed abscissae are the embedded Gauss nodes.
inline constexpr double kGK15Nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double kGK15WeightsK[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kGK15WeightsG[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <class F>
std::pair<double, double> gk15(const F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(mid);
  double kron = fc * kGK15WeightsK[7];
  double gauss = fc * kGK15WeightsG[3];
  for (int i = 0; i < 7; ++i) {
    const double f1 = f(mid - half * kGK15Nodes[i]);
    const double f2 = f(mid + half * kGK15Nodes[i]);
    kron += kGK15WeightsK[i] * (f1 + f2);
    if (i % 2 == 1) gauss += kGK15WeightsG[i / 2] * (f1 + f2);
  }
  return {kron * half, std::abs(kron - gauss) * half};
}

template <class F>
double adaptive_gk_impl(const F& f, double a, double b, double rel_tol, double abs_tol,
                        int depth) {
  const auto [value, err] = gk15(f, a, b);
  if (err <= abs_tol || err <= rel_tol * std::abs(value) || depth >= 52) return value;
  const double mid = 0.5 * (a + b);
  return adaptive_gk_impl(f, a, mid, rel_tol, 0.5 * abs_tol, depth + 1) +
         adaptive_gk_impl(f, mid, b, rel_tol, 0.5 * abs_tol, depth + 1);
}

template <class F>
double adaptive_gk(const F& f, double a, double b, double rel_tol = 1e-12,
                   double abs_tol = 0.0) {
  if (a == b) return 0.0;
  return adaptive_gk_impl(f, a, b, rel_tol, abs_tol, 0);
}

}  // namespace ctrw::detail
