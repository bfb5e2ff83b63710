#pragma once

#include <algorithm>
#include <cstdint>

#include "dce/compression.hpp"
#include "dce/recovery.hpp"
#include "dce/rng.hpp"
#include "dce/signal.hpp"

namespace trials {

/// Fraction of noiseless trials (Gaussian d x m matrix, s-sparse truth) in
/// which OMP returns exactly the true support.
inline double exact_support_rate(std::uint64_t seed, int n_trials, Eigen::Index d = 10,
                                 Eigen::Index m = 50, std::size_t s = 3) {
  const dce::RngPlan plan(seed);
  int hits = 0;
  for (int t = 0; t < n_trials; ++t) {
    dce::Engine rng = plan.stream(static_cast<std::uint64_t>(t), dce::StreamPurpose::Trial);
    const auto phi = dce::init_gaussian(d, m, rng);
    const auto truth = dce::generate_ground_truth(static_cast<std::size_t>(m), s, rng);
    const auto res = dce::omp_run(phi, phi.entries * truth.coeffs, dce::OmpConfig{s, 1e-9});
    auto found = res.support;
    std::sort(found.begin(), found.end());
    hits += found == truth.support ? 1 : 0;
  }
  return static_cast<double>(hits) / n_trials;
}

}  // namespace trials
