#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dce {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

// Error hierarchy. Everything thrown by the library derives from Error so the
// CLI can map categories onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// D x M compression map. D <= M.
struct MeasurementMatrix {
  CMatrix entries;

  Eigen::Index d() const { return entries.rows(); }
  Eigen::Index m() const { return entries.cols(); }
};

namespace detail {

inline void require_same(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": expected length " + std::to_string(a) +
                            ", got " + std::to_string(b));
  }
}

}  // namespace detail
}  // namespace dce
