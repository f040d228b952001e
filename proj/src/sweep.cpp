#include "ctrw/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <utility>

#include "ctrw/csv.hpp"
#include "ctrw/errors.hpp"
#include "ctrw/fractional.hpp"
#include "ctrw/rng.hpp"

namespace ctrw {

namespace {

constexpr const char* kToolVersion = "ctrw-search 1.0.0";

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ValidationError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw ValidationError("trailing characters in number: '" + text + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    throw ValidationError("not a non-negative integer: '" + text + "'");
  }
  if (used != text.size())
    throw ValidationError("trailing characters in integer: '" + text + "'");
  return static_cast<std::uint64_t>(v);
}

bool parse_bool(const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ValidationError("not a boolean (use true/false): '" + text + "'");
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string join_numbers(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_number(v[i]);
  }
  return out;
}

std::string range_text(const RangeSpec& r) {
  return format_number(r.lo) + ":" + format_number(r.hi) + ":" + format_number(r.step);
}

std::vector<Regime> regimes_for(const RunConfig& config) {
  if (config.regime) return {*config.regime};
  return {Regime::nondestructive, Regime::destructive};
}

void write_common_metadata(CsvWriter& out, const RunConfig& config) {
  out.comment("tool", kToolVersion);
  out.comment("command", config.command);
  out.comment("seed", std::to_string(config.seed));
  out.comment("out", config.output_path);
}

std::string regime_echo(const RunConfig& config) {
  return config.regime ? regime_name(*config.regime) : "both";
}

}  // namespace

// ------------------------------- plumbing -----------------------------------

RangeSpec RangeSpec::parse(const std::string& text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos)
    throw ValidationError("range must be lo:hi:step, got '" + text + "'");
  RangeSpec r;
  r.lo = parse_double(text.substr(0, c1));
  r.hi = parse_double(text.substr(c1 + 1, c2 - c1 - 1));
  r.step = parse_double(text.substr(c2 + 1));
  if (!(r.step > 0.0)) throw ValidationError("range step must be positive: '" + text + "'");
  if (r.hi < r.lo) throw ValidationError("range upper bound below lower: '" + text + "'");
  return r;
}

std::vector<double> RangeSpec::values() const { return uniform_axis(lo, hi, step); }

std::size_t SweepGrid::index(std::size_t lam, std::size_t i1, std::size_t i2) const {
  const std::size_t n2 = axis2.empty() ? 1 : axis2.size();
  return (lam * axis1.size() + i1) * n2 + i2;
}

double SweepGrid::at(std::size_t lam, std::size_t i1, std::size_t i2) const {
  return values[index(lam, i1, i2)];
}

void SweepGrid::check() const {
  const std::size_t n2 = axis2.empty() ? 1 : axis2.size();
  require(values.size() == lambda_values.size() * axis1.size() * n2,
          "sweep grid dimensions inconsistent");
  for (double v : values) {
    require(std::isfinite(v) && v >= 0.0, "sweep grid holds a non-finite or negative value");
  }
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::map<std::string, std::string> pairs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ValidationError(path + ":" + std::to_string(lineno) + ": empty key or value");
    pairs[key] = value;
  }
  if (in.bad()) throw IoError("read failed: " + path);
  return pairs;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = trim(text.substr(start, comma - start));
    if (!item.empty()) out.push_back(parse_double(item));
    start = comma + 1;
  }
  return out;
}

Regime parse_regime(const std::string& text) {
  if (text == "destructive") return Regime::destructive;
  if (text == "nondestructive") return Regime::nondestructive;
  throw ValidationError("regime must be destructive or nondestructive, got '" + text + "'");
}

std::string regime_name(Regime regime) {
  return regime == Regime::destructive ? "destructive" : "nondestructive";
}

void apply_config_pairs(RunConfig& config, const std::map<std::string, std::string>& pairs) {
  for (const auto& [key, value] : pairs) {
    if (key == "seed") {
      config.seed = parse_u64(value);
    } else if (key == "out") {
      config.output_path = value;
    } else if (key == "trace") {
      config.trace_path = value;
    } else if (key == "lambda") {
      config.lambda_values = parse_number_list(value);
    } else if (key == "mu_range") {
      config.mu_range = RangeSpec::parse(value);
    } else if (key == "alpha_range") {
      config.alpha_range = RangeSpec::parse(value);
    } else if (key == "beta_range") {
      config.beta_range = RangeSpec::parse(value);
    } else if (key == "z_range") {
      config.z_range = RangeSpec::parse(value);
    } else if (key == "k_range") {
      config.k_range = RangeSpec::parse(value);
    } else if (key == "regime") {
      config.regime = parse_regime(value);
    } else if (key == "walkers") {
      config.walkers = static_cast<std::size_t>(parse_u64(value));
    } else if (key == "max_captures") {
      config.max_captures = static_cast<std::size_t>(parse_u64(value));
    } else if (key == "max_steps") {
      config.max_steps = static_cast<std::size_t>(parse_u64(value));
    } else if (key == "alpha") {
      config.params.alpha = parse_double(value);
    } else if (key == "beta") {
      config.params.beta = parse_double(value);
    } else if (key == "rv" || key == "r_v") {
      config.params.r_v = parse_double(value);
    } else if (key == "T") {
      config.params.T = parse_double(value);
    } else if (key == "arena_factor") {
      config.arena_factor = parse_double(value);
    } else if (key == "classical") {
      config.classical = parse_bool(value);
    } else if (key == "t_list") {
      config.t_list = parse_number_list(value);
    } else if (key == "beta_list") {
      config.beta_list = parse_number_list(value);
    } else {
      throw ValidationError("unknown config key: '" + key + "'");
    }
  }
}

// -------------------------------- commands ----------------------------------

std::vector<SweepGrid> cmd_levy_sweep(const RunConfig& config) {
  require(!config.lambda_values.empty(), "lambda list is empty");
  const std::vector<double> mu = config.mu_range.values();
  require(!mu.empty(), "mu grid is empty");
  require(mu.front() > 1.0 && mu.back() < 3.0, "mu grid must lie inside (1, 3)");

  std::vector<SweepGrid> grids;
  CsvWriter out(config.output_path);
  write_common_metadata(out, config);
  out.comment("lambda", join_numbers(config.lambda_values));
  out.comment("mu_range", range_text(config.mu_range));
  out.comment("regime", regime_echo(config));
  out.comment("normalization", "lambda_eta = lambda * eta (efficiency per unit distance)");
  out.header({"regime", "lambda", "mu", "lambda_eta"});

  for (Regime regime : regimes_for(config)) {
    SweepGrid grid;
    grid.axis1 = mu;
    grid.lambda_values = config.lambda_values;
    grid.regime = regime;
    grid.values.reserve(mu.size() * config.lambda_values.size());
    for (std::size_t il = 0; il < config.lambda_values.size(); ++il) {
      SearchParams p = config.params;
      p.lambda = config.lambda_values[il];
      for (double m : mu) {
        p.mu = m;
        const double lambda_eta = p.lambda * eta_levy(p, regime).eta;
        grid.values.push_back(lambda_eta);
        out.row({regime_name(regime), format_number(p.lambda), format_number(m),
                 format_number(lambda_eta)});
      }
    }
    grid.check();
    grids.push_back(std::move(grid));
  }
  out.close();
  return grids;
}

std::vector<SweepGrid> cmd_ctrw_sweep(const RunConfig& config) {
  require(!config.lambda_values.empty(), "lambda list is empty");
  const std::vector<double> alpha = config.alpha_range.values();
  const std::vector<double> beta = config.beta_range.values();
  require(!alpha.empty() && !beta.empty(), "alpha/beta grid is empty");
  require(alpha.front() > 0.0 && alpha.back() < 2.0, "alpha grid must lie inside (0, 2)");
  require(beta.front() > 0.0 && beta.back() < 1.0, "beta grid must lie inside (0, 1)");

  std::vector<SweepGrid> grids;
  CsvWriter out(config.output_path);
  write_common_metadata(out, config);
  out.comment("lambda", join_numbers(config.lambda_values));
  out.comment("alpha_range", range_text(config.alpha_range));
  out.comment("beta_range", range_text(config.beta_range));
  out.comment("r_v", format_number(config.params.r_v));
  out.comment("T", format_number(config.params.T));
  out.comment("regime", regime_echo(config));
  out.comment("normalization",
              "lambda_eta = lambda * eta * T (efficiency per unit distance and mean wait)");
  const std::string extrema_path = config.output_path + ".extrema.csv";
  out.comment("extrema_out", extrema_path);
  out.header({"regime", "lambda", "alpha", "beta", "lambda_eta"});

  CsvWriter extrema(extrema_path);
  write_common_metadata(extrema, config);
  extrema.comment("contents", "per (regime, lambda) argmax of the sweep surface");
  extrema.header({"regime", "lambda", "argmax_alpha", "argmax_beta", "max_lambda_eta"});

  for (Regime regime : regimes_for(config)) {
    SweepGrid grid;
    grid.axis1 = alpha;
    grid.axis2 = beta;
    grid.lambda_values = config.lambda_values;
    grid.regime = regime;
    grid.values.reserve(alpha.size() * beta.size() * config.lambda_values.size());
    for (std::size_t il = 0; il < config.lambda_values.size(); ++il) {
      SearchParams p = config.params;
      p.lambda = config.lambda_values[il];
      double best = -1.0;
      double best_alpha = alpha.front();
      double best_beta = beta.front();
      for (double a : alpha) {
        p.alpha = a;
        for (double b : beta) {
          p.beta = b;
          const double lambda_eta = p.lambda * eta_ctrw(p, regime).eta * p.T;
          grid.values.push_back(lambda_eta);
          if (lambda_eta > best) {
            best = lambda_eta;
            best_alpha = a;
            best_beta = b;
          }
          out.row({regime_name(regime), format_number(p.lambda), format_number(a),
                   format_number(b), format_number(lambda_eta)});
        }
      }
      extrema.row({regime_name(regime), format_number(p.lambda), format_number(best_alpha),
                   format_number(best_beta), format_number(best)});
    }
    grid.check();
    grids.push_back(std::move(grid));
  }
  out.close();
  extrema.close();
  return grids;
}

namespace {

void write_trace(const std::string& path, const RunConfig& config, const Trajectory& traj,
                 Regime regime, double lambda) {
  CsvWriter out(path);
  out.comment("tool", kToolVersion);
  out.comment("command", config.command);
  out.comment("seed", std::to_string(config.seed));
  out.comment("lambda", format_number(lambda));
  out.comment("alpha", format_number(config.params.alpha));
  out.comment("beta", format_number(config.params.beta));
  out.comment("regime", regime_name(regime));
  out.comment("endpoint",
              "x1,y1 = start + traversed displacement (unwrapped across the periodic seam)");
  out.header({"step_index", "x0", "y0", "x1", "y1", "flight_length", "wait_time", "captured"});
  for (std::size_t i = 0; i < traj.steps.size(); ++i) {
    const TrajectoryStep& s = traj.steps[i];
    const double norm = s.flight_vector.norm();
    Vec2 end = s.start;
    if (norm > 0.0) end = s.start + s.flight_vector * (s.flight_length / norm);
    out.row({std::to_string(i), format_number(s.start.x), format_number(s.start.y),
             format_number(end.x), format_number(end.y), format_number(s.flight_length),
             format_number(s.wait_time), s.captured_target ? "1" : "0"});
  }
  out.comment("total_distance", format_number(traj.total_distance));
  out.comment("total_wait", format_number(traj.total_wait));
  out.comment("captures", std::to_string(traj.captures));
  out.close();
}

Regime single_regime(const RunConfig& config) {
  return config.regime.value_or(Regime::nondestructive);
}

void write_sim_metadata(CsvWriter& out, const RunConfig& config, Regime regime, double lambda) {
  write_common_metadata(out, config);
  out.comment("lambda", format_number(lambda));
  out.comment("alpha", format_number(config.params.alpha));
  out.comment("beta", format_number(config.params.beta));
  out.comment("r_v", format_number(config.params.r_v));
  out.comment("T", format_number(config.params.T));
  out.comment("regime", regime_name(regime));
  out.comment("walkers", std::to_string(config.walkers));
  out.comment("max_captures", std::to_string(config.max_captures));
  out.comment("max_steps", std::to_string(config.max_steps));
  out.comment("arena_factor", format_number(config.arena_factor));
  if (config.params.beta == 0.0) {
    out.comment("normalization", "efficiency = captures per unit distance (waitless reduction)");
  } else {
    out.comment("normalization",
                "efficiency = captures / (mean_flight * mean_wait * total_steps)");
  }
}

}  // namespace

SimResult cmd_simulate(const RunConfig& config) {
  require(config.walkers >= 1, "simulate needs walkers >= 1");
  require(!config.lambda_values.empty(), "lambda list is empty");
  const double lambda = config.lambda_values.front();
  const Regime regime = single_regime(config);

  SearchParams p = config.params;
  p.lambda = lambda;
  const FieldSpec spec = field_spec_for_lambda(lambda, p.r_v, regime, config.arena_factor);
  const StopCondition stop{config.max_captures, config.max_steps};

  CsvWriter out(config.output_path);
  write_sim_metadata(out, config, regime, lambda);
  out.header({"regime", "lambda", "alpha", "beta", "walkers", "captures", "total_steps",
              "mean_flight", "mean_wait", "efficiency", "efficiency_per_distance",
              "n_mean_empirical", "low_statistics", "hit_step_cap"});
  SimResult result;
  try {
    RngStream root(config.seed);
    result = ensemble_efficiency(spec, p, config.walkers, root, stop);
  } catch (const std::exception& e) {
    out.comment("status", std::string("failed: ") + e.what());
    out.close();
    throw;
  }
  out.row({regime_name(regime), format_number(lambda), format_number(p.alpha),
           format_number(p.beta), std::to_string(config.walkers), std::to_string(result.captures),
           std::to_string(result.total_steps), format_number(result.mean_flight),
           format_number(result.mean_wait), format_number(result.efficiency),
           format_number(result.efficiency_per_distance), format_number(result.n_mean_empirical),
           result.low_statistics ? "1" : "0", result.hit_step_cap ? "1" : "0"});
  out.comment("status", "ok");
  out.close();

  if (!config.trace_path.empty()) {
    RngStream root(config.seed);
    RngStream field_rng = root.split(0);
    RngStream walk_rng = root.split(1);
    const TargetField field =
        generate_targets(spec.density, spec.arena_side, field_rng, spec.regime);
    auto [traj, one] = run_walker(field, p, walk_rng, stop);
    write_trace(config.trace_path, config, traj, regime, lambda);
  }
  return result;
}

double cmd_fractional_compare(const RunConfig& config) {
  require(config.walkers >= 10'000, "fractional-compare needs walkers >= 10000");
  require(!config.t_list.empty(), "t list is empty");
  require(std::is_sorted(config.t_list.begin(), config.t_list.end()),
          "t list must be ascending");
  require(config.t_list.front() >= 0.0, "t values must be non-negative");
  const std::vector<double> k_grid = config.k_range.values();
  require(!k_grid.empty(), "k grid is empty");
  require(k_grid.front() > 0.0, "k grid must be positive");

  McWalkParams walk;
  if (config.classical) {
    walk.alpha = 2.0;
    walk.beta = 1.0;
  } else {
    walk.alpha = config.params.alpha;
    walk.beta = config.params.beta;
  }
  walk.jump_scale = 1.0;
  walk.wait_scale = 1.0;

  RngStream root(config.seed);
  const PropagatorGrid grid =
      mc_propagator_char(walk, config.walkers, config.t_list, k_grid, root);
  const double scale = fit_propagator_scale(grid);
  const std::size_t t_max_index = grid.t_values.size() - 1;

  CsvWriter out(config.output_path);
  write_common_metadata(out, config);
  out.comment("alpha", format_number(walk.alpha));
  out.comment("beta", format_number(walk.beta));
  out.comment("classical", config.classical ? "1" : "0");
  out.comment("walkers", std::to_string(config.walkers));
  out.comment("t_list", join_numbers(config.t_list));
  out.comment("k_range", range_text(config.k_range));
  out.comment("analytic_model", "E_beta(-scale * |k|^alpha * t^beta), scale fitted at max t");
  out.header({"t", "k", "mc_real", "mc_imag", "analytic", "abs_dev"});

  double sup_at_tmax = 0.0;
  double sup_overall = 0.0;
  for (std::size_t it = 0; it < grid.t_values.size(); ++it) {
    const double t = grid.t_values[it];
    for (std::size_t ik = 0; ik < grid.axis.size(); ++ik) {
      const double k = grid.axis[ik];
      const double analytic =
          t == 0.0 ? 1.0
                   : mittag_leffler(walk.beta,
                                    -scale * std::pow(k, walk.alpha) * std::pow(t, walk.beta));
      const std::complex<double> mc = grid.values[it][ik];
      const double dev = std::abs(mc.real() - analytic);
      sup_overall = std::max(sup_overall, dev);
      if (it == t_max_index) sup_at_tmax = std::max(sup_at_tmax, dev);
      out.row({format_number(t), format_number(k), format_number(mc.real()),
               format_number(mc.imag()), format_number(analytic), format_number(dev)});
    }
  }
  out.comment("fitted_scale", format_number(scale));
  out.comment("sup_deviation_at_t_max", format_number(sup_at_tmax));
  out.comment("sup_deviation_overall", format_number(sup_overall));
  out.comment("low_statistics", grid.low_statistics ? "1" : "0");
  out.close();
  return sup_at_tmax;
}

void cmd_ml_eval(const RunConfig& config) {
  require(!config.beta_list.empty(), "beta list is empty");
  for (double b : config.beta_list) {
    require(b > 0.0 && b <= 1.0, "beta must lie in (0, 1]");
  }
  require(config.z_range.hi <= 0.0, "z grid must be non-positive");
  const std::vector<double> z_grid = config.z_range.values();
  require(!z_grid.empty(), "z grid is empty");

  CsvWriter out(config.output_path);
  write_common_metadata(out, config);
  out.comment("beta_list", join_numbers(config.beta_list));
  out.comment("z_range", range_text(config.z_range));
  out.header({"beta", "z", "value"});
  for (double b : config.beta_list) {
    for (double z : z_grid) {
      out.row({format_number(b), format_number(z), format_number(mittag_leffler(b, z))});
    }
  }
  out.close();
}

void cmd_path_trace(const RunConfig& config) {
  require(!config.lambda_values.empty(), "lambda list is empty");
  const double lambda = config.lambda_values.front();
  const Regime regime = single_regime(config);

  SearchParams p = config.params;
  p.lambda = lambda;
  const FieldSpec spec = field_spec_for_lambda(lambda, p.r_v, regime, config.arena_factor);
  const StopCondition stop{config.max_captures, config.max_steps};

  RngStream root(config.seed);
  RngStream field_rng = root.split(0);
  RngStream walk_rng = root.split(1);
  const TargetField field =
      generate_targets(spec.density, spec.arena_side, field_rng, spec.regime);
  auto [traj, result] = run_walker(field, p, walk_rng, stop);
  write_trace(config.output_path, config, traj, regime, lambda);
}

void run_command(const RunConfig& config) {
  if (config.command == "levy-sweep") {
    cmd_levy_sweep(config);
  } else if (config.command == "ctrw-sweep") {
    cmd_ctrw_sweep(config);
  } else if (config.command == "simulate") {
    cmd_simulate(config);
  } else if (config.command == "fractional-compare") {
    cmd_fractional_compare(config);
  } else if (config.command == "ml-eval") {
    cmd_ml_eval(config);
  } else if (config.command == "path-trace") {
    cmd_path_trace(config);
  } else {
    throw ValidationError("unknown command: '" + config.command + "'");
  }
}

}  // namespace ctrw
