#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "dce/types.hpp"

namespace dce {

struct OmpConfig {
  std::size_t max_support = 3;
  double residual_tol = 1e-9;
};

struct OmpResult {
  CVector estimate;                    // length M, zero off the support
  std::vector<std::size_t> support;    // in selection order
  std::vector<double> residual_norms;  // ||r|| before the first step and after each step
  bool stalled = false;                // a selected column was linearly dependent
};

namespace detail {

// Relative size of the new column's component orthogonal to the already
// selected ones below which the column counts as dependent.
inline constexpr double kOmpRankTol = 1e-10;

inline CMatrix gather_columns(const CMatrix& phi, const std::vector<std::size_t>& cols) {
  CMatrix out(phi.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    out.col(static_cast<Eigen::Index>(j)) = phi.col(static_cast<Eigen::Index>(cols[j]));
  }
  return out;
}

}  // namespace detail

/// Orthogonal matching pursuit: greedily pick the column with the largest
/// normalized correlation |phi_j^H r| / ||phi_j|| (smallest index on ties),
/// refit y on every picked column by Householder QR, repeat until the support
/// holds max_support columns or ||r|| <= residual_tol.
inline OmpResult omp_run(const MeasurementMatrix& phi, const CVector& y, const OmpConfig& config) {
  detail::require_same(phi.d(), y.size(), "omp_reconstruct");
  if (config.max_support > static_cast<std::size_t>(phi.d())) {
    throw InvalidArgument("omp_reconstruct: max_support " + std::to_string(config.max_support) +
                          " exceeds D = " + std::to_string(phi.d()));
  }
  if (!(config.residual_tol >= 0.0)) throw InvalidArgument("omp_reconstruct: residual_tol < 0");

  const Eigen::Index m = phi.m();
  const Eigen::VectorXd col_norms = phi.entries.colwise().norm().transpose();
  OmpResult res;
  res.estimate = CVector::Zero(m);
  CVector residual = y;
  CVector coef;
  std::vector<bool> taken(static_cast<std::size_t>(m), false);
  res.residual_norms.push_back(residual.norm());

  while (res.support.size() < config.max_support && residual.norm() > config.residual_tol) {
    const CVector corr = phi.entries.adjoint() * residual;
    Eigen::Index best = -1;
    double best_score = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (taken[static_cast<std::size_t>(j)]) continue;
      const double score = col_norms(j) > 0.0 ? std::abs(corr(j)) / col_norms(j) : 0.0;
      if (best < 0 || score > best_score) {
        best = j;
        best_score = score;
      }
    }
    if (best < 0 || best_score == 0.0) break;

    std::vector<std::size_t> trial = res.support;
    trial.push_back(static_cast<std::size_t>(best));
    const CMatrix sub = detail::gather_columns(phi.entries, trial);
    const Eigen::HouseholderQR<CMatrix> qr(sub);
    const Eigen::Index t = sub.cols() - 1;
    const double fresh = std::abs(qr.matrixQR()(t, t));
    if (fresh <= detail::kOmpRankTol * col_norms(best)) {
      res.stalled = true;
      break;
    }
    res.support = std::move(trial);
    taken[static_cast<std::size_t>(best)] = true;
    coef = qr.solve(y);
    residual = y - sub * coef;
    res.residual_norms.push_back(residual.norm());
  }

  for (std::size_t j = 0; j < res.support.size(); ++j) {
    res.estimate(static_cast<Eigen::Index>(res.support[j])) = coef(static_cast<Eigen::Index>(j));
  }
  return res;
}

inline CVector omp_reconstruct(const MeasurementMatrix& phi, const CVector& y, const OmpConfig& config) {
  return omp_run(phi, y, config).estimate;
}

}  // namespace dce
