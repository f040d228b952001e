#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctrw/efficiency.hpp"
#include "ctrw/search_sim.hpp"

namespace ctrw {

// Inclusive lo:hi:step axis, the CLI's range syntax.
struct RangeSpec {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;

  static RangeSpec parse(const std::string& text);  // "a:b:step"
  std::vector<double> values() const;               // uniform_axis(lo, hi, step)
};

// One sweep surface: values[lam][i1][i2] flattened row-major with lambda
// outermost, holding the normalized product lambda * eta (waitless commands)
// or lambda * eta * T (combined-cost commands).
struct SweepGrid {
  std::vector<double> axis1;          // mu, or alpha
  std::vector<double> axis2;          // beta; empty when the sweep is 1-D
  std::vector<double> lambda_values;
  Regime regime = Regime::nondestructive;
  std::vector<double> values;

  std::size_t index(std::size_t lam, std::size_t i1, std::size_t i2) const;
  double at(std::size_t lam, std::size_t i1, std::size_t i2) const;
  void check() const;  // dimensions match, every value finite and >= 0
};

// Effective configuration of one command invocation. Defaults below mirror
// the reference setup (r_v = 1, T = 5, lambda in {10, 1e3, 1e5, 1e7});
// loaders overlay first the config file, then explicit CLI flags.
struct RunConfig {
  std::string command;
  SearchParams params;  // alpha = 1, beta = 0.5, r_v = 1, T = 5 defaults

  std::vector<double> lambda_values{10.0, 1e3, 1e5, 1e7};
  RangeSpec mu_range{1.05, 2.95, 0.01};
  RangeSpec alpha_range{0.1, 1.9, 0.01};
  RangeSpec beta_range{0.1, 0.9, 0.01};
  std::optional<Regime> regime;  // unset = emit both regimes

  std::uint64_t seed = 1;
  std::size_t walkers = 8;
  std::string output_path = "out.csv";
  std::string trace_path;  // optional per-step export (simulate)

  std::size_t max_captures = 100;  // per walker; 0 = unbounded
  std::size_t max_steps = 10'000'000;
  double arena_factor = 2.0;

  // fractional-compare
  bool classical = false;  // Gaussian-jump / exponential-wait surrogate pair
  std::vector<double> t_list{25.0, 50.0, 100.0, 200.0, 400.0};
  RangeSpec k_range{0.02, 0.6, 0.02};

  // ml-eval
  std::vector<double> beta_list{0.5};
  RangeSpec z_range{-10.0, 0.0, 0.1};
};

// Flat "key = value" file; '#' starts a comment, blank lines ignored.
// Returns the raw pairs (IoError when the file cannot be read,
// ValidationError on a malformed line).
std::map<std::string, std::string> parse_config_file(const std::string& path);

// Overlay raw key/value pairs onto a config. Unknown keys are rejected so
// typos fail loudly. Exposed for the CLI and for direct testing.
void apply_config_pairs(RunConfig& config, const std::map<std::string, std::string>& pairs);

// Parse helpers shared with the CLI flag layer.
std::vector<double> parse_number_list(const std::string& text);  // "a,b,c"
Regime parse_regime(const std::string& text);
std::string regime_name(Regime regime);

// --------------------------------- commands ---------------------------------
//
// Each command is a pure function of its RunConfig: identical configs give
// byte-identical output files. All write a '#' metadata block (tool version,
// effective config echo, seed) before the column header.

// Length-only baseline over the mu grid, per lambda and regime.
// Columns: regime, lambda, mu, lambda_eta.
std::vector<SweepGrid> cmd_levy_sweep(const RunConfig& config);

// Combined-cost surface over the (alpha, beta) lattice, per lambda and
// regime. Columns: regime, lambda, alpha, beta, lambda_eta. A companion
// "<out>.extrema.csv" table holds each (regime, lambda) argmax.
std::vector<SweepGrid> cmd_ctrw_sweep(const RunConfig& config);

// Foraging ensemble; one summary row, optional per-step trace of walker 0.
SimResult cmd_simulate(const RunConfig& config);

// Monte Carlo vs analytic characteristic function on a shared (k, t) grid;
// summary comments carry the fitted scale and sup deviation. Returns the
// overall sup deviation.
double cmd_fractional_compare(const RunConfig& config);

// Relaxation-function table over beta_list x z_range (z <= 0).
void cmd_ml_eval(const RunConfig& config);

// Single-walker step table: step_index, x0, y0, x1, y1, flight_length,
// wait_time, captured.
void cmd_path_trace(const RunConfig& config);

// Dispatch on config.command; ValidationError for an unknown command.
void run_command(const RunConfig& config);

}  // namespace ctrw
