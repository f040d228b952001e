// Command-line front end: parameter sweeps, foraging simulation, and
// fractional-diffusion cross-checks, all emitting plot-ready CSV.
//
// Exit codes: 0 success, 1 validation error, 2 I/O error, 3 numerical
// failure (singularity or convergence guard tripped).

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "ctrw/errors.hpp"
#include "ctrw/sweep.hpp"

namespace {

struct RawArgs {
  std::string config_path;
  std::map<std::string, std::string> values;  // config-key -> raw text, set flags only
};

void add_options(CLI::App* sub, RawArgs& raw) {
  sub->add_option("--config", raw.config_path, "flat `key = value` config file (flags override)");
  auto bind = [sub, &raw](const std::string& flag, const std::string& key,
                          const std::string& desc) {
    sub->add_option_function<std::string>(
        flag, [&raw, key](const std::string& v) { raw.values[key] = v; }, desc);
  };
  bind("--seed", "seed", "RNG seed (default 1)");
  bind("--out", "out", "output CSV path (default out.csv)");
  bind("--lambda", "lambda", "comma list of mean free paths (default 10,1e3,1e5,1e7)");
  bind("--mu-range", "mu_range", "levy-sweep mu grid lo:hi:step inside (1,3)");
  bind("--alpha-range", "alpha_range", "flight-index grid lo:hi:step inside (0,2)");
  bind("--beta-range", "beta_range", "wait-index grid lo:hi:step inside (0,1)");
  bind("--regime", "regime", "destructive | nondestructive (default: both for sweeps)");
  bind("--walkers", "walkers", "ensemble size");
  bind("--alpha", "alpha", "flight-length tail index");
  bind("--beta", "beta", "waiting-time tail index (0 = waitless reduction)");
  bind("--rv", "rv", "visibility radius (default 1)");
  bind("--T", "T", "wait-time scale (default 5)");
  bind("--trace", "trace", "per-step trajectory CSV for walker 0 (simulate)");
  bind("--max-captures", "max_captures", "per-walker capture budget, 0 = unbounded");
  bind("--max-steps", "max_steps", "per-walker hard step cap");
  bind("--arena-factor", "arena_factor", "arena side = factor * lambda (default 2)");
  bind("--t-list", "t_list", "comma list of recording times (fractional-compare)");
  bind("--k-range", "k_range", "wavenumber grid lo:hi:step (fractional-compare)");
  bind("--z-range", "z_range", "argument grid lo:hi:step, z <= 0 (ml-eval)");
  bind("--beta-list", "beta_list", "comma list of orders (ml-eval)");
  sub->add_flag_callback(
      "--classical", [&raw] { raw.values["classical"] = "1"; },
      "Gaussian-jump / exponential-wait surrogate pair (fractional-compare)");
}

std::size_t default_walkers(const std::string& command) {
  if (command == "fractional-compare") return 10'000;
  if (command == "path-trace") return 1;
  return 8;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Optimal-search toolkit: power-law flight/wait sweeps, 2-D foraging "
      "simulation, and fractional-diffusion cross-checks (CSV output)."};
  app.require_subcommand(1);

  std::map<std::string, RawArgs> raw;
  const std::pair<const char*, const char*> commands[] = {
      {"levy-sweep", "length-only efficiency over a mu grid, per lambda and regime"},
      {"ctrw-sweep", "combined-cost efficiency surface over (alpha, beta), per lambda and regime"},
      {"simulate", "foraging ensemble; summary row plus optional per-step trace"},
      {"fractional-compare", "Monte Carlo vs analytic relaxation of the walk propagator"},
      {"ml-eval", "tabulate the relaxation function E_beta(z) on z <= 0"},
      {"path-trace", "single-walker step table (search-path figure data)"},
  };
  for (const auto& [name, desc] : commands) {
    add_options(app.add_subcommand(name, desc), raw[name]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "validation error: " << e.what() << '\n';
    return 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  const RawArgs& args = raw[sub->get_name()];
  try {
    ctrw::RunConfig config;
    config.command = sub->get_name();
    config.walkers = default_walkers(config.command);
    if (!args.config_path.empty()) {
      ctrw::apply_config_pairs(config, ctrw::parse_config_file(args.config_path));
    }
    ctrw::apply_config_pairs(config, args.values);
    ctrw::run_command(config);
  } catch (const ctrw::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 1;
  } catch (const ctrw::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 2;
  } catch (const ctrw::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
