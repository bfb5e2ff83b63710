#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dce/rng.hpp"
#include "dce/types.hpp"

namespace dce {

/// Magnitude above which an adapted measurement matrix is treated as diverged.
inline constexpr double kPhiDivergenceBound = 1e6;

/// i.i.d. circular complex Gaussian entries with variance 1/D, so that
/// E||Phi x||^2 = ||x||^2.
inline MeasurementMatrix init_gaussian(Eigen::Index d, Eigen::Index m, Engine& rng,
                                       bool real_valued = false) {
  if (d < 1 || d > m) {
    throw InvalidArgument("init_gaussian: need 1 <= d <= m, got d=" + std::to_string(d) +
                          ", m=" + std::to_string(m));
  }
  MeasurementMatrix phi{CMatrix(d, m)};
  const double var = 1.0 / static_cast<double>(d);
  // Column-major fill order is part of the reproducibility contract.
  for (Eigen::Index c = 0; c < m; ++c) {
    for (Eigen::Index r = 0; r < d; ++r) phi.entries(r, c) = complex_gaussian(rng, var, real_valued);
  }
  return phi;
}

inline MeasurementMatrix identity_matrix(Eigen::Index m) {
  return MeasurementMatrix{CMatrix::Identity(m, m)};
}

inline CVector compress(const MeasurementMatrix& phi, const CVector& x) {
  detail::require_same(phi.m(), x.size(), "compress");
  return phi.entries * x;
}

inline void check_divergence(const MeasurementMatrix& phi) {
  const double worst = phi.entries.cwiseAbs().maxCoeff();
  if (!std::isfinite(worst) || worst > kPhiDivergenceBound) {
    throw DivergenceError("measurement matrix diverged (max |entry| = " + std::to_string(worst) +
                          "); reduce eta");
  }
}

/// Steepest-descent step on the instantaneous output-error cost:
///   Phi + eta [ y* x_bar w^H - x_bar x_bar^H Phi w w^H ],
/// where y = omega_bar^H x_bar is the node's compressed-domain output and w is
/// the current sparse reconstruction standing in for omega0.
inline MeasurementMatrix phi_update(const MeasurementMatrix& phi, const CVector& x_bar, cplx y,
                                    const CVector& omega_re, double eta) {
  detail::require_same(phi.d(), x_bar.size(), "phi_update (x_bar)");
  detail::require_same(phi.m(), omega_re.size(), "phi_update (omega_re)");
  if (!(eta >= 0.0)) throw InvalidArgument("phi_update: eta must be >= 0");
  // x_bar x_bar^H Phi w w^H = x_bar (x_bar^H Phi w) w^H, so the bracket is rank one.
  const cplx projected = x_bar.dot(phi.entries * omega_re);
  const cplx gain = eta * (std::conj(y) - projected);
  MeasurementMatrix out{phi.entries + gain * x_bar * omega_re.adjoint()};
  check_divergence(out);
  return out;
}

/// Same direction as phi_update with the step divided by ||x_bar||^2 ||w||^2,
/// which makes the projected output x_bar^H Phi w move a fraction eta of the
/// way toward y* per step regardless of signal scale.
inline MeasurementMatrix phi_update_normalized(const MeasurementMatrix& phi, const CVector& x_bar,
                                               cplx y, const CVector& omega_re, double eta,
                                               double eps = 1e-8) {
  if (!(eta >= 0.0)) throw InvalidArgument("phi_update_normalized: eta must be >= 0");
  const double scale = x_bar.squaredNorm() * omega_re.squaredNorm();
  return phi_update(phi, x_bar, y, omega_re, eta / (eps + scale));
}

inline void write_phi_csv(const MeasurementMatrix& phi, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path + " for writing");
  os.precision(17);
  os << "row,col,real,imag\n";
  for (Eigen::Index r = 0; r < phi.d(); ++r) {
    for (Eigen::Index c = 0; c < phi.m(); ++c) {
      os << r << ',' << c << ',' << phi.entries(r, c).real() << ',' << phi.entries(r, c).imag()
         << '\n';
    }
  }
  if (!os) throw Error("write failed: " + path);
}

/// Reads the row,col,real,imag format. Dimensions are inferred from the
/// largest indices; missing cells are zero.
inline MeasurementMatrix read_phi_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path);
  std::string line;
  std::getline(is, line);
  struct Cell {
    long r, c;
    double re, im;
  };
  std::vector<Cell> cells;
  long rows = 0, cols = 0;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    Cell cell{};
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(ls >> cell.r >> c1 >> cell.c >> c2 >> cell.re >> c3 >> cell.im) || c1 != ',' ||
        c2 != ',' || c3 != ',' || cell.r < 0 || cell.c < 0) {
      throw Error(path + ":" + std::to_string(lineno) + ": expected row,col,real,imag");
    }
    rows = std::max(rows, cell.r + 1);
    cols = std::max(cols, cell.c + 1);
    cells.push_back(cell);
  }
  if (cells.empty()) throw Error(path + ": no matrix entries");
  MeasurementMatrix phi{CMatrix::Zero(rows, cols)};
  for (const auto& cell : cells) phi.entries(cell.r, cell.c) = cplx{cell.re, cell.im};
  return phi;
}

}  // namespace dce
