#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "dce/rng.hpp"
#include "dce/types.hpp"

namespace dce {

/// The unknown M-vector with S nonzero coefficients. `support` is sorted.
struct SparseVector {
  CVector coeffs;
  std::vector<std::size_t> support;

  Eigen::Index size() const { return coeffs.size(); }
};

/// AR(1) tapped-delay-line regressor x_k(i) = u_k(i) + alpha x_k(i-1),
/// with var(u) = 1 - alpha^2 so the process has unit variance.
struct RegressorState {
  std::size_t node_id = 0;
  double alpha = 0.0;
  bool real_valued = false;
  CVector buffer;  // [x(i), x(i-1), ..., x(i-M+1)]
  cplx last_scalar{0.0, 0.0};
};

struct NoiseModel {
  double variance = 0.0;
  bool real_valued = false;

  cplx draw(Engine& rng) const { return complex_gaussian(rng, variance, real_valued); }
};

inline SparseVector generate_ground_truth(std::size_t m, std::size_t s, Engine& rng,
                                          bool real_valued = false) {
  if (s > m) {
    throw InvalidArgument("generate_ground_truth: sparsity " + std::to_string(s) +
                          " exceeds length " + std::to_string(m));
  }
  // Partial Fisher-Yates gives a uniform s-subset.
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t j = 0; j < s; ++j) {
    std::uniform_int_distribution<std::size_t> pick(j, m - 1);
    std::swap(idx[j], idx[pick(rng)]);
  }
  SparseVector out;
  out.support.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(s));
  std::sort(out.support.begin(), out.support.end());
  out.coeffs = CVector::Zero(static_cast<Eigen::Index>(m));
  for (std::size_t j : out.support) {
    cplx z{0.0, 0.0};
    // A zero draw would silently shrink the support.
    while (z == cplx{0.0, 0.0}) z = complex_gaussian(rng, 1.0, real_valued);
    out.coeffs(static_cast<Eigen::Index>(j)) = z;
  }
  return out;
}

inline RegressorState regressor_step(RegressorState state, Engine& rng) {
  if (!(std::abs(state.alpha) < 1.0)) throw InvalidArgument("regressor_step: |alpha| must be < 1");
  const double innovation_var = 1.0 - state.alpha * state.alpha;
  const cplx u = complex_gaussian(rng, innovation_var, state.real_valued);
  const cplx x = u + state.alpha * state.last_scalar;
  const Eigen::Index m = state.buffer.size();
  if (m > 1) {
    CVector shifted = state.buffer.head(m - 1);
    state.buffer.tail(m - 1) = shifted;
  }
  if (m > 0) state.buffer(0) = x;
  state.last_scalar = x;
  return state;
}

/// Regressor whose tap line is already filled from the stationary distribution.
inline RegressorState make_regressor(std::size_t node_id, double alpha, std::size_t m, Engine& rng,
                                     bool real_valued = false) {
  if (!(std::abs(alpha) < 1.0)) throw InvalidArgument("make_regressor: |alpha| must be < 1");
  RegressorState s;
  s.node_id = node_id;
  s.alpha = alpha;
  s.real_valued = real_valued;
  s.buffer = CVector::Zero(static_cast<Eigen::Index>(m));
  s.last_scalar = complex_gaussian(rng, 1.0, real_valued);
  if (m > 0) s.buffer(0) = s.last_scalar;
  for (std::size_t j = 1; j < m; ++j) s = regressor_step(std::move(s), rng);
  return s;
}

/// d = omega0^H x + n
inline cplx measure_full(const SparseVector& omega0, const CVector& x, cplx noise) {
  detail::require_same(omega0.size(), x.size(), "measure_full");
  return omega0.coeffs.dot(x) + noise;
}

/// d = (Phi omega0)^H x_bar + n
inline cplx measure_compressed(const SparseVector& omega0, const MeasurementMatrix& phi,
                               const CVector& x_bar, cplx noise) {
  detail::require_same(phi.m(), omega0.size(), "measure_compressed (phi columns)");
  detail::require_same(phi.d(), x_bar.size(), "measure_compressed (x_bar)");
  const CVector target = phi.entries * omega0.coeffs;
  return target.dot(x_bar) + noise;
}

inline void write_ground_truth_csv(const SparseVector& omega0, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path + " for writing");
  os.precision(17);
  os << "index,real,imag\n";
  for (Eigen::Index j = 0; j < omega0.size(); ++j) {
    os << j << ',' << omega0.coeffs(j).real() << ',' << omega0.coeffs(j).imag() << '\n';
  }
  if (!os) throw Error("write failed: " + path);
}

}  // namespace dce
