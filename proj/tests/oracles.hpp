#pragma once

// Independent reference computations for the unit tests. Nothing here calls
// into the code paths under test beyond the shared data types.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stack>
#include <vector>

#include "dce/types.hpp"

namespace oracle {

using dce::cplx;
using dce::CMatrix;
using dce::CVector;

/// a^H b by explicit summation.
inline cplx inner(const CVector& a, const CVector& b) {
  cplx acc{0.0, 0.0};
  for (Eigen::Index j = 0; j < a.size(); ++j) acc += std::conj(a(j)) * b(j);
  return acc;
}

inline CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  CMatrix out = CMatrix::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      for (Eigen::Index k = 0; k < a.cols(); ++k) out(i, j) += a(i, k) * b(k, j);
  return out;
}

inline CVector matvec(const CMatrix& a, const CVector& x) {
  CVector out = CVector::Zero(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) out(i) += a(i, k) * x(k);
  return out;
}

/// u v^H
inline CMatrix outer(const CVector& u, const CVector& v) {
  CMatrix out(u.size(), v.size());
  for (Eigen::Index i = 0; i < u.size(); ++i)
    for (Eigen::Index j = 0; j < v.size(); ++j) out(i, j) = u(i) * std::conj(v(j));
  return out;
}

/// Depth-first reachability from node 0 over a predicate linked(k, l).
template <class Linked>
bool connected(std::size_t n, Linked linked) {
  if (n == 0) return true;
  std::vector<bool> seen(n, false);
  std::stack<std::size_t> todo;
  todo.push(0);
  seen[0] = true;
  std::size_t count = 1;
  while (!todo.empty()) {
    const std::size_t k = todo.top();
    todo.pop();
    for (std::size_t l = 0; l < n; ++l) {
      if (!seen[l] && linked(k, l)) {
        seen[l] = true;
        ++count;
        todo.push(l);
      }
    }
  }
  return count == n;
}

/// Instantaneous surrogate of the first three terms of the output-error cost,
/// with the noise dropped: |d|^2 - d* y - d y*, d = (Phi w)^H x_bar.
inline double phi_surrogate(const CMatrix& phi, const CVector& x_bar, cplx y, const CVector& w) {
  const cplx d = inner(matvec(phi, w), x_bar);
  return (std::norm(d) - std::conj(d) * y - d * std::conj(y)).real();
}

/// Least squares restricted to a known support via the normal equations.
inline CVector support_least_squares(const CMatrix& phi, const CVector& y,
                                     const std::vector<std::size_t>& support) {
  CMatrix a(phi.rows(), static_cast<Eigen::Index>(support.size()));
  for (std::size_t j = 0; j < support.size(); ++j) a.col(static_cast<Eigen::Index>(j)) = phi.col(static_cast<Eigen::Index>(support[j]));
  const CMatrix gram = a.adjoint() * a;
  const CVector rhs = a.adjoint() * y;
  const CVector coef = gram.ldlt().solve(rhs);
  CVector out = CVector::Zero(phi.cols());
  for (std::size_t j = 0; j < support.size(); ++j) out(static_cast<Eigen::Index>(support[j])) = coef(static_cast<Eigen::Index>(j));
  return out;
}

/// Nearest mid-rise level by enumerating all 2^bits cell centers in [-c, c],
/// with values outside the range mapped to the nearest end cell.
inline double midrise_nearest(double v, unsigned bits, double clip) {
  const std::size_t levels = std::size_t{1} << bits;
  const double step = 2.0 * clip / static_cast<double>(levels);
  double best = 0.0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < levels; ++j) {
    const double level = -clip + (static_cast<double>(j) + 0.5) * step;
    const double dist = std::abs(level - v);
    if (dist < best_dist) {
      best_dist = dist;
      best = level;
    }
  }
  return best;
}

}  // namespace oracle
