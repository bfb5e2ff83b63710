#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "dce/types.hpp"

namespace dce {

using Engine = std::mt19937_64;

// What a random stream is used for. Each (run, purpose, node) triple gets its
// own engine so the draw order of one consumer never perturbs another.
enum class StreamPurpose : std::uint64_t {
  Topology = 1,
  GroundTruth = 2,
  Measurement = 3,
  Correlation = 4,
  Regressor = 5,
  Noise = 6,
  Trial = 7,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class RngPlan {
 public:
  explicit RngPlan(std::uint64_t master_seed) : master_(master_seed) {}

  std::uint64_t master_seed() const { return master_; }

  std::uint64_t stream_seed(std::uint64_t run, StreamPurpose purpose, std::uint64_t node = 0) const {
    std::uint64_t h = splitmix64(master_);
    h = splitmix64(h ^ run);
    h = splitmix64(h ^ static_cast<std::uint64_t>(purpose));
    h = splitmix64(h ^ node);
    return h;
  }

  Engine stream(std::uint64_t run, StreamPurpose purpose, std::uint64_t node = 0) const {
    std::seed_seq seq{static_cast<std::uint32_t>(stream_seed(run, purpose, node)),
                      static_cast<std::uint32_t>(stream_seed(run, purpose, node) >> 32)};
    return Engine(seq);
  }

 private:
  std::uint64_t master_;
};

/// Circular complex Gaussian with E|z|^2 = variance. With real_only the
/// imaginary part is zeroed and the real part carries the full variance.
inline cplx complex_gaussian(Engine& rng, double variance, bool real_only = false) {
  std::normal_distribution<double> normal(0.0, 1.0);
  if (real_only) {
    return {std::sqrt(variance) * normal(rng), 0.0};
  }
  const double sd = std::sqrt(variance / 2.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {sd * re, sd * im};
}

}  // namespace dce
