#pragma once

#include <cstdint>
#include <random>

namespace ctrw {

// splitmix64: statistically strong 64-bit mixer used to expand (seed,
// stream_id) pairs into engine seed material. Keeping the expansion explicit
// (instead of std::seed_seq alone) makes the whole seeding path independent
// of library internals that the standard leaves unspecified.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Deterministic, splittable random stream. Identical (seed, stream_id)
// pairs reproduce bit-identical draw sequences; distinct stream_ids give
// decorrelated parallel sub-streams. All uniforms are built directly from
// engine bits so sequences are stable across standard library versions
// (std::uniform_real_distribution is implementation-defined).
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : seed_(seed), stream_id_(stream_id) {
    std::uint64_t s = seed ^ (0x9E3779B97F4A7C15ULL * (stream_id + 0x632BE59BD9B4E019ULL));
    const std::uint64_t w0 = splitmix64(s);
    const std::uint64_t w1 = splitmix64(s);
    const std::uint64_t w2 = splitmix64(s);
    const std::uint64_t w3 = splitmix64(s);
    std::seed_seq seq{static_cast<std::uint32_t>(w0), static_cast<std::uint32_t>(w0 >> 32),
                      static_cast<std::uint32_t>(w1), static_cast<std::uint32_t>(w1 >> 32),
                      static_cast<std::uint32_t>(w2), static_cast<std::uint32_t>(w2 >> 32),
                      static_cast<std::uint32_t>(w3), static_cast<std::uint32_t>(w3 >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Child stream derived deterministically from this stream's identity.
  RngStream split(std::uint64_t child) const {
    return RngStream(seed_, stream_id_ * 0x9E3779B97F4A7C15ULL + child + 1);
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on (0, 1]: never returns 0, so u^(-1/a) and -log(u) are finite.
  double uniform_open01() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform on [0, 1).
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Fair +/-1 sign.
  double sign() { return (engine_() & 1ULL) ? 1.0 : -1.0; }

  // Standard normal via Box-Muller (two fresh uniforms per call; the spare
  // is deliberately discarded to keep the draw count per call fixed).
  double gaussian() {
    const double u1 = uniform_open01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  // Exponential with unit mean.
  double exponential() { return -std::log(uniform_open01()); }

  // Exact Poisson count via unit-rate arrivals: the number of i.i.d.
  // exponential gaps fitting in [0, mean). O(mean) draws, exact for any mean.
  std::uint64_t poisson(double mean) {
    std::uint64_t count = 0;
    double acc = exponential();
    while (acc < mean) {
      ++count;
      acc += exponential();
    }
    return count;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

}  // namespace ctrw
