#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "ctrw/efficiency.hpp"
#include "ctrw/errors.hpp"
#include "ctrw/rng.hpp"
#include "doctest.h"

using ctrw::EfficiencyResult;
using ctrw::GridSpec;
using ctrw::Regime;
using ctrw::SearchParams;

namespace {
SearchParams base() {
  SearchParams p;
  p.r_v = 1.0;
  p.lambda = 100.0;
  p.T = 5.0;
  p.alpha = 0.5;
  p.beta = 0.5;
  p.mu = 2.0;
  return p;
}
}  // namespace

TEST_CASE("combined cost closed form: exact hand value") {
  // 0.25*5/0.25 * (sqrt(100)*1 - 1) + 5*sqrt(100) = 45 + 50 = 95
  CHECK(ctrw::mean_cost_lt_closed(base()) == doctest::Approx(95.0).epsilon(1e-14));
}

TEST_CASE("closed form is singular only at alpha = 1") {
  SearchParams p = base();
  p.alpha = 1.0;
  CHECK_THROWS_AS(ctrw::mean_cost_lt_closed(p), ctrw::NumericalError);
  p.alpha = 0.5;
  p.beta = 0.0;  // regular point: first term vanishes, T*lambda^(1-a)*r_v^a remains
  CHECK(ctrw::mean_cost_lt_closed(p) == doctest::Approx(50.0).epsilon(1e-14));
}

TEST_CASE("antiderivative form matches the closed form away from alpha = 1") {
  SearchParams p = base();
  CHECK(ctrw::mean_cost_lt_quadrature(p) == doctest::Approx(95.0).epsilon(1e-12));
  for (double a : {0.3, 0.7, 1.3, 1.9}) {
    for (double b : {0.1, 0.5, 0.9}) {
      p.alpha = a;
      p.beta = b;
      const double closed = ctrw::mean_cost_lt_closed(p);
      const double quad = ctrw::mean_cost_lt_quadrature(p);
      CHECK(std::abs(closed - quad) / quad < 1e-10);
    }
  }
}

TEST_CASE("antiderivative form is finite and continuous across alpha = 1") {
  SearchParams p = base();
  p.alpha = 1.0;
  const double at_one = ctrw::mean_cost_lt_quadrature(p);
  CHECK(std::isfinite(at_one));
  p.alpha = 1.0 - 1e-6;
  const double left = ctrw::mean_cost_lt_quadrature(p);
  p.alpha = 1.0 + 1e-6;
  const double right = ctrw::mean_cost_lt_quadrature(p);
  CHECK(std::abs(left - right) / at_one < 1e-4);
  CHECK(std::abs(left - at_one) / at_one < 1e-4);
}

TEST_CASE("closed-form one-sided limits meet across alpha = 1") {
  SearchParams p = base();
  p.alpha = 1.0 - 1e-6;
  const double left = ctrw::mean_cost_lt_closed(p);
  p.alpha = 1.0 + 1e-6;
  const double right = ctrw::mean_cost_lt_closed(p);
  CHECK(std::abs(left - right) / std::abs(left) < 1e-4);
}

TEST_CASE("flight-count formulas and their algebraic relation") {
  SearchParams p = base();
  p.lambda = 10.0;
  p.alpha = 1.0;
  CHECK(ctrw::n_destructive(p) == doctest::Approx(10.0).epsilon(1e-14));
  p.lambda = 1e4;
  p.alpha = 0.5;
  CHECK(ctrw::n_destructive(p) == doctest::Approx(100.0).epsilon(1e-14));
  p.lambda = 100.0;
  p.alpha = 1.0;
  CHECK(ctrw::n_nondestructive(p) == doctest::Approx(10.0).epsilon(1e-14));
  p.lambda = 1e6;
  CHECK(ctrw::n_nondestructive(p) == doctest::Approx(1000.0).epsilon(1e-14));
  p.alpha = 0.05;  // alpha -> 0: both counts approach 1
  CHECK(ctrw::n_destructive(p) == doctest::Approx(std::pow(1e6, 0.05)).epsilon(1e-14));

  ctrw::RngStream rng(17, 0);
  for (int i = 0; i < 200; ++i) {
    p.r_v = 0.1 + 3.0 * rng.uniform01();
    p.lambda = p.r_v * (10.0 + 1e5 * rng.uniform01());
    p.alpha = 0.05 + 1.9 * rng.uniform01();
    const double nd = ctrw::n_destructive(p);
    const double nn = ctrw::n_nondestructive(p);
    CHECK(std::abs(nn * nn - nd) / nd < 1e-12);
  }
}

TEST_CASE("efficiency results satisfy the definitional identity") {
  ctrw::RngStream rng(18, 0);
  for (int i = 0; i < 500; ++i) {
    SearchParams p = base();
    p.r_v = 0.1 + 3.0 * rng.uniform01();
    p.lambda = p.r_v * (10.0 + 1e6 * rng.uniform01());
    p.T = 0.1 + 20.0 * rng.uniform01();
    p.alpha = 0.05 + 1.89 * rng.uniform01();
    p.beta = 0.05 + 0.9 * rng.uniform01();
    p.mu = 1.05 + 1.9 * rng.uniform01();
    for (Regime regime : {Regime::destructive, Regime::nondestructive}) {
      const EfficiencyResult c = ctrw::eta_ctrw(p, regime);
      CHECK(std::abs(c.eta * c.n_mean * c.cost_mean - 1.0) < 1e-12);
      CHECK(c.eta > 0.0);
      const EfficiencyResult l = ctrw::eta_levy(p, regime);
      CHECK(std::abs(l.eta * l.n_mean * l.cost_mean - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("waitless combined-cost limit: continuous in beta and equal to the baseline") {
  SearchParams p = base();
  p.beta = 0.0;
  CHECK(ctrw::mean_cost_lt_quadrature(p) == doctest::Approx(50.0).epsilon(1e-12));
  SearchParams q = p;
  q.beta = 1e-9;
  CHECK(ctrw::mean_cost_lt_quadrature(q) ==
        doctest::Approx(ctrw::mean_cost_lt_quadrature(p)).epsilon(1e-6));

  // Reduction mode: eta_ctrw(beta = 0) is the length-only baseline at
  // mu = alpha + 1, for both regimes.
  for (double alpha : {0.4, 1.0, 1.6}) {
    p.alpha = alpha;
    SearchParams levy = p;
    levy.mu = alpha + 1.0;
    for (Regime regime : {Regime::destructive, Regime::nondestructive}) {
      const double a = ctrw::eta_ctrw(p, regime).eta;
      const double b = ctrw::eta_levy(levy, regime).eta;
      CHECK(a == doctest::Approx(b).epsilon(1e-14));
    }
  }
}

TEST_CASE("length-only baseline: optimum near mu = 2, destructive monotone") {
  SearchParams p = base();
  const auto mu_grid = ctrw::uniform_axis(1.1, 2.9, 0.01);
  for (double lambda : {1e3, 1e5}) {
    p.lambda = lambda;
    double best_mu = 0.0, best_val = -1.0, prev = -1.0;
    bool destructive_monotone = true;
    for (double mu : mu_grid) {
      p.mu = mu;
      const double nd = lambda * ctrw::eta_levy(p, Regime::nondestructive).eta;
      if (nd > best_val) {
        best_val = nd;
        best_mu = mu;
      }
      const double d = lambda * ctrw::eta_levy(p, Regime::destructive).eta;
      if (prev >= 0.0 && d >= prev) destructive_monotone = false;
      prev = d;
    }
    CHECK(best_mu > 1.7);
    CHECK(best_mu < 2.2);
    CHECK(destructive_monotone);
  }
  // mu -> 1+: destructive flight count approaches 1
  p.mu = 1.0 + 1e-9;
  CHECK(ctrw::eta_levy(p, Regime::destructive).n_mean == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("grid argmax: destructive pins the smallest corner; distance shrinks with lambda") {
  GridSpec grid;  // 181 x 81 default lattice
  const auto d = ctrw::find_optimum(Regime::destructive, 1e3, 1.0, 5.0, grid);
  CHECK(d.alpha == doctest::Approx(grid.alpha_min).epsilon(1e-14));
  CHECK(d.beta == doctest::Approx(grid.beta_min).epsilon(1e-14));

  double prev_dist = 1e9;
  for (double lambda : {10.0, 1e3, 1e5, 1e7}) {
    const auto o = ctrw::find_optimum(Regime::nondestructive, lambda, 1.0, 5.0, grid);
    const double dist = std::max(std::abs(o.alpha - 1.0), std::abs(o.beta - 0.5));
    CHECK(dist <= prev_dist + 1e-12);
    prev_dist = dist;
  }
}

TEST_CASE("grid argmax: degenerate and empty grids") {
  GridSpec single;
  single.alpha_min = single.alpha_max = 0.7;
  single.beta_min = single.beta_max = 0.3;
  const auto o = ctrw::find_optimum(Regime::nondestructive, 1e3, 1.0, 5.0, single);
  CHECK(o.alpha == 0.7);
  CHECK(o.beta == 0.3);

  GridSpec bad;
  bad.alpha_step = -1.0;
  CHECK_THROWS_AS(ctrw::find_optimum(Regime::nondestructive, 1e3, 1.0, 5.0, bad),
                  ctrw::ValidationError);
}

TEST_CASE("destructive surface decreases along both axes") {
  SearchParams p = base();
  p.lambda = 1e3;
  const auto alphas = ctrw::uniform_axis(0.1, 1.9, 0.1);
  const auto betas = ctrw::uniform_axis(0.1, 0.9, 0.1);
  for (double b : betas) {
    p.beta = b;
    double prev = -1.0;
    for (double a : alphas) {
      p.alpha = a;
      const double eta = ctrw::eta_ctrw(p, Regime::destructive).eta;
      if (prev >= 0.0) CHECK(eta < prev);
      prev = eta;
    }
  }
  for (double a : alphas) {
    p.alpha = a;
    double prev = -1.0;
    for (double b : betas) {
      p.beta = b;
      const double eta = ctrw::eta_ctrw(p, Regime::destructive).eta;
      if (prev >= 0.0) CHECK(eta < prev);
      prev = eta;
    }
  }
}

TEST_CASE("parameter validation rejects out-of-domain values") {
  SearchParams p = base();
  p.lambda = 0.5;  // below r_v
  CHECK_THROWS_AS(p.validate(), ctrw::ValidationError);
  p = base();
  p.alpha = 2.0;
  CHECK_THROWS_AS(p.validate(), ctrw::ValidationError);
  p = base();
  p.beta = 1.0;
  CHECK_THROWS_AS(p.validate(), ctrw::ValidationError);
  p = base();
  p.beta = -0.1;
  CHECK_THROWS_AS(p.validate(), ctrw::ValidationError);
  p = base();
  p.mu = 3.0;
  CHECK_THROWS_AS(p.validate(), ctrw::ValidationError);
}
