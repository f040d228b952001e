#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ctrw/efficiency.hpp"
#include "ctrw/powerlaw.hpp"
#include "ctrw/rng.hpp"
#include "ctrw/vec2.hpp"

namespace ctrw {

// ------------------------------ target field --------------------------------

// Random targets on a periodic square arena. density is the realized
// count/arena^2; the implied mean free path for visibility radius r_v is
// 1 / (2 r_v density) (2-D kinetic relation).
struct TargetField {
  std::vector<Vec2> positions;
  double arena_side = 0.0;
  double density = 0.0;
  Regime regime = Regime::nondestructive;

  double mean_free_path(double r_v) const { return 1.0 / (2.0 * r_v * density); }
};

// Poisson-distributed count with mean density*arena^2 (ValidationError if
// that mean is < 1), positions i.i.d. uniform. Deterministic per stream.
TargetField generate_targets(double density, double arena_side, RngStream& rng,
                             Regime regime = Regime::nondestructive);

// Field geometry for ensembles that generate one independent realization
// per walker.
struct FieldSpec {
  double density = 0.0;
  double arena_side = 0.0;
  Regime regime = Regime::nondestructive;
};

// Spec with density 1/(2 r_v lambda) and arena arena_factor*lambda.
FieldSpec field_spec_for_lambda(double lambda, double r_v, Regime regime,
                                double arena_factor = 2.0);

// ------------------------------- trajectory ---------------------------------

struct TrajectoryStep {
  Vec2 start;                    // wrapped position at the step's beginning
  Vec2 flight_vector;            // intended displacement (unit dir * drawn length)
  double flight_length = 0.0;    // traversed length (truncated at a capture)
  double wait_time = 0.0;        // 0 for direct approach moves
  std::optional<std::uint32_t> captured_target;  // index into the field
};

struct Trajectory {
  std::vector<TrajectoryStep> steps;
  double total_distance = 0.0;
  double total_wait = 0.0;
  std::size_t captures = 0;
};

// ------------------------------ sim results ---------------------------------

struct SimResult {
  double efficiency = 0.0;       // captures*steps/(distance*wait); captures/distance when waitless
  double efficiency_per_distance = 0.0;  // captures / total distance (always)
  double n_mean_empirical = 0.0; // steps per capture (0 when captures = 0)
  double mean_flight = 0.0;      // total distance / steps
  double mean_wait = 0.0;        // total wait / steps
  std::size_t captures = 0;
  std::size_t total_steps = 0;
  std::size_t walker_count = 0;
  std::uint64_t seed = 0;
  bool low_statistics = false;   // no captures observed
  bool hit_step_cap = false;     // stopped by the hard step cap
};

// ------------------------------ run control ---------------------------------

struct StopCondition {
  std::size_t max_captures = 0;          // 0 = unbounded
  std::size_t max_steps = 10'000'000;    // hard determinism/runtime guard
};

struct WalkOptions {
  double wait_cutoff = 0.0;              // 0 = default sampler scale (params.T)
  double eps_restart = 1e-3;             // revisitable-capture restart offset
  bool record_trajectory = true;
  std::optional<Vec2> start;             // default: arena center
};

// One forager over one field realization. Movement rules per step:
//   (1) if an alive target sits within r_v (minimum-image), move straight to
//       it and capture; no wait is charged;
//   (2) otherwise draw a wait, then a flight length (power law, cutoff r_v),
//       then a uniform direction, and traverse the segment scanning
//       continuously; the flight truncates at the first point whose distance
//       to an alive target equals r_v.
// Consumed targets are removed (destructive regime); revisitable targets
// persist and the walker restarts from a uniformly random point on the
// circle of radius r_v*(1+eps_restart) around the capture (nondestructive).
// params.beta == 0 disables waits entirely (all wait times zero).
// Draw order per rule-(2) step is fixed: wait, length, direction.
std::pair<Trajectory, SimResult> run_walker(const TargetField& field, const SearchParams& params,
                                            RngStream& rng, const StopCondition& stop,
                                            const WalkOptions& options = {});

// Independent walkers on independent field realizations (streams split per
// walker), reduced in walker order. Efficiency uses the product-of-means
// form captures/(mean_flight*mean_wait*steps); the per-distance form is
// reported alongside for waitless comparisons.
SimResult ensemble_efficiency(const FieldSpec& field_spec, const SearchParams& params,
                              std::size_t walkers, RngStream& rng, const StopCondition& stop,
                              const WalkOptions& options = {});

// ------------------------- geometry helpers (shared) ------------------------

// Earliest parameter s in [0, seg_len] at which the segment p + s*dir enters
// the closed disk of radius r_v around q; negative when there is no entry.
// dir must be unit length. Shared by the simulator and the exhaustive replay
// oracle so both sides agree bit-for-bit.
double segment_entry_param(const Vec2& p, const Vec2& dir, double seg_len, const Vec2& q,
                           double r_v);

// Wrap a coordinate into [0, arena).
double wrap_coord(double x, double arena);

}  // namespace ctrw
