#include "ctrw/search_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_map>

#include "ctrw/errors.hpp"

namespace ctrw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Uniform grid over the arena with cell >= 2 r_v, so a 3x3 neighborhood of
// the cell containing any point covers the full disk of radius r_v around it
// (with one extra cell of slack for points near a cell edge).
class TargetHash {
 public:
  TargetHash(const std::vector<Vec2>& positions, double arena, double r_v) : arena_(arena) {
    const double preferred = std::max(2.0 * r_v, arena / 2048.0);
    n_ = static_cast<std::int64_t>(std::floor(arena / preferred));
    n_ = std::max<std::int64_t>(n_, 3);
    cell_ = arena / static_cast<double>(n_);
    cells_.reserve(positions.size());
    for (std::uint32_t i = 0; i < positions.size(); ++i) {
      cells_[key(cell_index(positions[i].x), cell_index(positions[i].y))].push_back(i);
    }
  }

  double cell_size() const { return cell_; }

  std::int64_t cell_index(double x) const {
    auto c = static_cast<std::int64_t>(std::floor(x / cell_));
    return std::clamp<std::int64_t>(c, 0, n_ - 1);
  }

  // Calls fn(index, shift) for every target in the 3x3 block around cell
  // (cx, cy); shift is the periodic image offset to add to the stored
  // position so it lives in the query's frame.
  template <typename Fn>
  void for_neighborhood(std::int64_t cx, std::int64_t cy, Fn&& fn) const {
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        std::int64_t ix = cx + dx;
        std::int64_t iy = cy + dy;
        Vec2 shift{0.0, 0.0};
        if (ix < 0) {
          ix += n_;
          shift.x = -arena_;
        } else if (ix >= n_) {
          ix -= n_;
          shift.x = arena_;
        }
        if (iy < 0) {
          iy += n_;
          shift.y = -arena_;
        } else if (iy >= n_) {
          iy -= n_;
          shift.y = arena_;
        }
        auto it = cells_.find(key(ix, iy));
        if (it == cells_.end()) continue;
        for (std::uint32_t idx : it->second) fn(idx, shift);
      }
    }
  }

 private:
  std::uint64_t key(std::int64_t ix, std::int64_t iy) const {
    return static_cast<std::uint64_t>(ix) * static_cast<std::uint64_t>(n_) +
           static_cast<std::uint64_t>(iy);
  }

  double arena_;
  double cell_;
  std::int64_t n_ = 0;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> cells_;
};

struct DirectHit {
  bool found = false;
  std::uint32_t index = 0;
  Vec2 position{0.0, 0.0};  // image in the walker's frame
};

// Rule (1): nearest alive target within r_v of pos under minimum image.
DirectHit nearest_within_radius(const Vec2& pos, const TargetHash& hash,
                                const std::vector<Vec2>& positions,
                                const std::vector<char>& alive, double r_v) {
  DirectHit best;
  double best_d2 = r_v * r_v;
  std::uint32_t best_idx = 0;
  Vec2 best_img{0.0, 0.0};
  bool found = false;
  hash.for_neighborhood(hash.cell_index(pos.x), hash.cell_index(pos.y),
                        [&](std::uint32_t idx, const Vec2& shift) {
                          if (!alive[idx]) return;
                          const Vec2 img = positions[idx] + shift;
                          const double d2 = (img - pos).norm2();
                          if (d2 < best_d2 || (d2 == best_d2 && found && idx < best_idx)) {
                            best_d2 = d2;
                            best_idx = idx;
                            best_img = img;
                            found = true;
                          }
                        });
  if (found) {
    best.found = true;
    best.index = best_idx;
    best.position = best_img;
  }
  return best;
}

struct Interception {
  bool hit = false;
  std::uint32_t index = 0;
  double s = 0.0;   // traversed distance from the flight's start
  Vec2 point{0.0, 0.0};  // wrapped contact point
};

// Rule (2) scan: walk the segment pos + s*dir, s in [0, length], across the
// periodic arena and return the first contact with any alive target's
// visibility disk. Pieces between wall crossings are traversed cell by cell
// so each candidate is discovered no later than the cell containing its
// contact point; the walk stops once every remaining cell starts beyond the
// best contact found.
Interception first_interception(Vec2 pos, const Vec2& dir, double length, const TargetHash& hash,
                                const std::vector<Vec2>& positions, const std::vector<char>& alive,
                                double arena, double r_v) {
  Interception best;
  best.s = kInf;
  double s_base = 0.0;
  double remaining = length;
  Vec2 p = pos;

  while (remaining > 0.0) {
    // A point sitting exactly on an outgoing wall is the same physical point
    // as its opposite image; normalize so the wall distance is positive.
    if (p.x == 0.0 && dir.x < 0.0) p.x = arena;
    if (p.y == 0.0 && dir.y < 0.0) p.y = arena;

    const double sx = dir.x > 0.0 ? (arena - p.x) / dir.x : (dir.x < 0.0 ? p.x / -dir.x : kInf);
    const double sy = dir.y > 0.0 ? (arena - p.y) / dir.y : (dir.y < 0.0 ? p.y / -dir.y : kInf);
    const double wall = std::min(sx, sy);
    const double seg = std::min(remaining, wall);

    std::int64_t cx = hash.cell_index(p.x);
    std::int64_t cy = hash.cell_index(p.y);
    const std::int64_t step_x = dir.x > 0.0 ? 1 : (dir.x < 0.0 ? -1 : 0);
    const std::int64_t step_y = dir.y > 0.0 ? 1 : (dir.y < 0.0 ? -1 : 0);
    const double cell = hash.cell_size();
    double t_max_x = dir.x > 0.0 ? ((static_cast<double>(cx) + 1.0) * cell - p.x) / dir.x
                                 : (dir.x < 0.0 ? (p.x - static_cast<double>(cx) * cell) / -dir.x
                                                : kInf);
    double t_max_y = dir.y > 0.0 ? ((static_cast<double>(cy) + 1.0) * cell - p.y) / dir.y
                                 : (dir.y < 0.0 ? (p.y - static_cast<double>(cy) * cell) / -dir.y
                                                : kInf);
    const double t_delta_x = dir.x != 0.0 ? cell / std::abs(dir.x) : kInf;
    const double t_delta_y = dir.y != 0.0 ? cell / std::abs(dir.y) : kInf;

    double entry = 0.0;
    while (true) {
      // Every later cell starts past the best contact; the tiny margin keeps
      // the cell walk's accumulated rounding from skipping an exact tie.
      if (s_base + entry > best.s + 1e-9 * (1.0 + best.s)) break;
      // A candidate may be revisited from adjacent cells, and a piece that
      // spans the whole arena can meet two distinct images of one target
      // (one near each wall), so every (cell, image) pair is tested; the
      // min-s tracking makes repeats harmless.
      hash.for_neighborhood(cx, cy, [&](std::uint32_t idx, const Vec2& shift) {
        if (!alive[idx]) return;
        const double s_local = segment_entry_param(p, dir, seg, positions[idx] + shift, r_v);
        if (s_local < 0.0) return;
        const double s_global = s_base + s_local;
        if (s_global < best.s || (s_global == best.s && best.hit && idx < best.index)) {
          best.hit = true;
          best.index = idx;
          best.s = s_global;
          best.point = {wrap_coord(p.x + s_local * dir.x, arena),
                        wrap_coord(p.y + s_local * dir.y, arena)};
        }
      });
      const double t_next = std::min(t_max_x, t_max_y);
      if (t_next >= seg) break;
      entry = t_next;
      if (t_max_x < t_max_y) {
        cx += step_x;
        t_max_x += t_delta_x;
      } else {
        cy += step_y;
        t_max_y += t_delta_y;
      }
      if (cx < 0 || cx >= static_cast<std::int64_t>(arena / cell) + 1) break;
      if (cy < 0 || cy >= static_cast<std::int64_t>(arena / cell) + 1) break;
    }

    if (best.hit && best.s <= s_base + seg) return best;

    s_base += seg;
    remaining -= seg;
    p = {wrap_coord(p.x + seg * dir.x, arena), wrap_coord(p.y + seg * dir.y, arena)};
    if (seg <= 0.0) throw NumericalError("segment traversal failed to advance");
  }

  if (best.hit && best.s <= length) return best;
  return Interception{};
}

}  // namespace

double wrap_coord(double x, double arena) {
  double w = x - arena * std::floor(x / arena);
  if (w >= arena) w -= arena;  // floor rounding at the upper wall
  if (w < 0.0) w = 0.0;
  return w;
}

double segment_entry_param(const Vec2& p, const Vec2& dir, double seg_len, const Vec2& q,
                           double r_v) {
  const Vec2 w = q - p;
  const double proj = w.dot(dir);
  const double d2 = std::max(0.0, w.norm2() - proj * proj);
  const double r2 = r_v * r_v;
  if (d2 > r2) return -1.0;
  const double s = proj - std::sqrt(r2 - d2);
  if (s < 0.0 || s > seg_len) return -1.0;
  return s;
}

TargetField generate_targets(double density, double arena_side, RngStream& rng, Regime regime) {
  require(std::isfinite(density) && density > 0.0, "target density must be positive");
  require(std::isfinite(arena_side) && arena_side > 0.0, "arena side must be positive");
  const double mean_count = density * arena_side * arena_side;
  require(mean_count >= 1.0, "arena too small: expected target count below one");

  TargetField field;
  field.arena_side = arena_side;
  field.regime = regime;
  const std::uint64_t count = rng.poisson(mean_count);
  field.positions.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    field.positions.push_back({rng.uniform01() * arena_side, rng.uniform01() * arena_side});
  }
  field.density = static_cast<double>(count) / (arena_side * arena_side);
  return field;
}

FieldSpec field_spec_for_lambda(double lambda, double r_v, Regime regime, double arena_factor) {
  require(std::isfinite(lambda) && lambda > 0.0, "lambda must be positive");
  require(std::isfinite(r_v) && r_v > 0.0, "visibility radius must be positive");
  require(arena_factor > 0.0, "arena factor must be positive");
  FieldSpec spec;
  spec.density = 1.0 / (2.0 * r_v * lambda);
  spec.arena_side = arena_factor * lambda;
  spec.regime = regime;
  return spec;
}

std::pair<Trajectory, SimResult> run_walker(const TargetField& field, const SearchParams& params,
                                            RngStream& rng, const StopCondition& stop,
                                            const WalkOptions& options) {
  params.validate();
  require(field.arena_side > 0.0, "field has no arena");
  require(field.arena_side >= 6.0 * params.r_v,
          "arena must be large compared to the visibility radius");
  require(options.eps_restart > 0.0, "restart offset must be positive");
  require(stop.max_steps > 0, "step cap must be positive");

  const double arena = field.arena_side;
  const bool waitless = params.beta == 0.0;
  const double wait_scale = options.wait_cutoff > 0.0 ? options.wait_cutoff : params.T;
  const PowerLawSpec length_spec = PowerLawSpec::length_law(params.alpha, params.r_v);
  const PowerLawSpec wait_spec =
      waitless ? PowerLawSpec::wait_law(0.5, 1.0)  // never sampled
               : PowerLawSpec::wait_law(params.beta, wait_scale);

  TargetHash hash(field.positions, arena, params.r_v);
  std::vector<char> alive(field.positions.size(), 1);
  std::size_t alive_count = field.positions.size();

  Vec2 pos = options.start.value_or(Vec2{arena / 2.0, arena / 2.0});
  pos = {wrap_coord(pos.x, arena), wrap_coord(pos.y, arena)};

  Trajectory traj;
  SimResult res;
  res.walker_count = 1;
  res.seed = rng.seed();

  auto handle_capture = [&](std::uint32_t idx, const Vec2& contact) {
    ++res.captures;
    if (field.regime == Regime::destructive) {
      alive[idx] = 0;
      --alive_count;
      pos = contact;
    } else {
      const double theta = rng.uniform01() * 2.0 * std::numbers::pi;
      const double radius = params.r_v * (1.0 + options.eps_restart);
      const Vec2 center = field.positions[idx];
      pos = {wrap_coord(center.x + radius * std::cos(theta), arena),
             wrap_coord(center.y + radius * std::sin(theta), arena)};
    }
  };

  while (res.total_steps < stop.max_steps &&
         (stop.max_captures == 0 || res.captures < stop.max_captures)) {
    TrajectoryStep step;
    step.start = pos;

    const DirectHit direct =
        alive_count == 0
            ? DirectHit{}
            : nearest_within_radius(pos, hash, field.positions, alive, params.r_v);
    if (direct.found) {
      const Vec2 delta = direct.position - pos;
      step.flight_vector = delta;
      step.flight_length = delta.norm();
      step.wait_time = 0.0;
      step.captured_target = direct.index;
      traj.total_distance += step.flight_length;
      ++res.total_steps;
      handle_capture(direct.index, {wrap_coord(direct.position.x, arena),
                                    wrap_coord(direct.position.y, arena)});
      if (options.record_trajectory) traj.steps.push_back(step);
      continue;
    }

    const double wait = waitless ? 0.0 : sample_wait(wait_spec, rng);
    const double length = sample_length(length_spec, rng);
    const Vec2 dir = sample_direction_2d(rng);

    // An exhausted field cannot intercept anything: the traversal, whose cost
    // scales with the flight length, would walk cells for nothing.
    const Interception hit =
        alive_count == 0
            ? Interception{}
            : first_interception(pos, dir, length, hash, field.positions, alive, arena,
                                 params.r_v);

    step.flight_vector = dir * length;
    step.wait_time = wait;
    traj.total_wait += wait;
    ++res.total_steps;
    if (hit.hit) {
      step.flight_length = hit.s;
      step.captured_target = hit.index;
      traj.total_distance += hit.s;
      handle_capture(hit.index, hit.point);
    } else {
      step.flight_length = length;
      traj.total_distance += length;
      pos = {wrap_coord(pos.x + length * dir.x, arena), wrap_coord(pos.y + length * dir.y, arena)};
    }
    if (options.record_trajectory) traj.steps.push_back(step);
  }

  traj.captures = res.captures;
  res.hit_step_cap = res.total_steps >= stop.max_steps &&
                     (stop.max_captures == 0 || res.captures < stop.max_captures);
  res.low_statistics = res.captures == 0;
  if (res.total_steps > 0) {
    res.mean_flight = traj.total_distance / static_cast<double>(res.total_steps);
    res.mean_wait = traj.total_wait / static_cast<double>(res.total_steps);
  }
  if (traj.total_distance > 0.0) {
    res.efficiency_per_distance = static_cast<double>(res.captures) / traj.total_distance;
  }
  if (res.captures > 0) {
    res.n_mean_empirical =
        static_cast<double>(res.total_steps) / static_cast<double>(res.captures);
  }
  if (waitless) {
    res.efficiency = res.efficiency_per_distance;
  } else if (res.mean_flight > 0.0 && res.mean_wait > 0.0) {
    res.efficiency = static_cast<double>(res.captures) /
                     (res.mean_flight * res.mean_wait * static_cast<double>(res.total_steps));
  }
  return {std::move(traj), res};
}

SimResult ensemble_efficiency(const FieldSpec& field_spec, const SearchParams& params,
                              std::size_t walkers, RngStream& rng, const StopCondition& stop,
                              const WalkOptions& options) {
  require(walkers > 0, "ensemble needs at least one walker");
  WalkOptions walker_options = options;
  walker_options.record_trajectory = false;

  SimResult total;
  total.walker_count = walkers;
  total.seed = rng.seed();
  double distance = 0.0;
  double wait = 0.0;
  for (std::size_t w = 0; w < walkers; ++w) {
    RngStream field_rng = rng.split(2 * w);
    RngStream walk_rng = rng.split(2 * w + 1);
    const TargetField field =
        generate_targets(field_spec.density, field_spec.arena_side, field_rng, field_spec.regime);
    auto [traj, one] = run_walker(field, params, walk_rng, stop, walker_options);
    total.captures += one.captures;
    total.total_steps += one.total_steps;
    distance += traj.total_distance;
    wait += traj.total_wait;
    total.hit_step_cap = total.hit_step_cap || one.hit_step_cap;
  }

  if (total.total_steps > 0) {
    total.mean_flight = distance / static_cast<double>(total.total_steps);
    total.mean_wait = wait / static_cast<double>(total.total_steps);
  }
  if (distance > 0.0) {
    total.efficiency_per_distance = static_cast<double>(total.captures) / distance;
  }
  if (total.captures > 0) {
    total.n_mean_empirical =
        static_cast<double>(total.total_steps) / static_cast<double>(total.captures);
  }
  if (params.beta == 0.0) {
    total.efficiency = total.efficiency_per_distance;
  } else if (total.mean_flight > 0.0 && total.mean_wait > 0.0) {
    total.efficiency = static_cast<double>(total.captures) /
                       (total.mean_flight * total.mean_wait *
                        static_cast<double>(total.total_steps));
  }
  total.low_statistics = total.captures < 100;
  return total;
}

}  // namespace ctrw
