#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "dce/algorithm.hpp"
#include "dce/signal.hpp"
#include "dce/types.hpp"

namespace dce {

/// Uniform mid-rise quantizer over [-clip, clip]. A complex coefficient gets
/// floor(b/2) bits on the real part and ceil(b/2) on the imaginary part.
struct QuantizerSpec {
  unsigned bits_per_coefficient = 8;
  double clip = 4.0;

  bool operator==(const QuantizerSpec&) const = default;
};

inline void validate(const QuantizerSpec& spec) {
  if (spec.bits_per_coefficient < 1) throw InvalidArgument("quantizer: bits_per_coefficient must be >= 1");
  if (!(spec.clip > 0.0)) throw InvalidArgument("quantizer: clip must be > 0");
}

/// Mid-rise quantization of one real value with `bits` bits (bits = 0 maps to 0).
inline double quantize_part(double v, unsigned bits, double clip) {
  const double levels = std::ldexp(1.0, static_cast<int>(bits));
  const double step = 2.0 * clip / levels;
  double cell = std::floor((v + clip) / step);
  cell = std::clamp(cell, 0.0, levels - 1.0);
  return -clip + (cell + 0.5) * step;
}

inline CVector quantize(const CVector& v, const QuantizerSpec& spec) {
  validate(spec);
  const unsigned re_bits = spec.bits_per_coefficient / 2;
  const unsigned im_bits = spec.bits_per_coefficient - re_bits;
  CVector out(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    out(j) = cplx{quantize_part(v(j).real(), re_bits, spec.clip),
                  quantize_part(v(j).imag(), im_bits, spec.clip)};
  }
  return out;
}

/// ||omega0 - estimate||^2
inline double msd(const CVector& estimate, const SparseVector& omega0) {
  detail::require_same(omega0.size(), estimate.size(), "msd");
  return (omega0.coeffs - estimate).squaredNorm();
}

/// Coefficients one node broadcasts per round.
inline std::size_t coefficients_per_round(AlgorithmKind kind, std::size_t m, std::size_t d) {
  return is_compressed(kind) ? d : m;
}

inline std::size_t bits_per_round(AlgorithmKind kind, std::size_t m, std::size_t d,
                                  const QuantizerSpec& spec) {
  validate(spec);
  return coefficients_per_round(kind, m, d) * spec.bits_per_coefficient;
}

inline double to_db(double power) { return 10.0 * std::log10(power); }

// Per-algorithm record of one experiment. error_power[run] is laid out as
// [iteration * n_nodes + node] and holds |e_k(i)|^2 of the a-priori error.
struct AlgorithmTrace {
  AlgorithmKind kind = AlgorithmKind::DCE;
  std::size_t coefficients_per_round = 0;
  std::size_t bits_per_round = 0;  // 0 when transmission is unquantized
  std::vector<std::vector<double>> error_power;
  std::vector<std::vector<double>> final_msd;  // [run][node]
  std::vector<bool> diverged;                  // excluded from aggregates when set
};

struct ExperimentTrace {
  std::size_t n_nodes = 0;
  std::size_t iterations = 0;
  std::size_t runs = 0;
  std::vector<AlgorithmTrace> algorithms;

  const AlgorithmTrace& find(AlgorithmKind kind) const {
    for (const auto& a : algorithms) {
      if (a.kind == kind) return a;
    }
    throw InvalidArgument("trace has no algorithm " + std::string(algorithm_name(kind)));
  }
};

struct MseCurve {
  std::vector<double> mse_db;  // per iteration
  std::size_t runs_aggregated = 0;
};

/// Network MSE of one run, per iteration, in dB.
inline std::vector<double> run_mse_db(const std::vector<double>& power, std::size_t n_nodes,
                                      std::size_t iterations) {
  std::vector<double> out(iterations);
  for (std::size_t i = 0; i < iterations; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n_nodes; ++k) acc += power[i * n_nodes + k];
    out[i] = to_db(acc / static_cast<double>(n_nodes));
  }
  return out;
}

/// MSE(i) = 10 log10( mean over non-diverged runs and all nodes of |e_k(i)|^2 ).
inline MseCurve mse_curve(const AlgorithmTrace& trace, std::size_t n_nodes, std::size_t iterations) {
  MseCurve curve;
  std::vector<double> acc(iterations, 0.0);
  for (std::size_t r = 0; r < trace.error_power.size(); ++r) {
    if (r < trace.diverged.size() && trace.diverged[r]) continue;
    const auto& p = trace.error_power[r];
    if (p.size() != n_nodes * iterations) throw DimensionMismatch("mse_curve: ragged trace");
    for (std::size_t i = 0; i < iterations; ++i) {
      for (std::size_t k = 0; k < n_nodes; ++k) acc[i] += p[i * n_nodes + k];
    }
    ++curve.runs_aggregated;
  }
  if (curve.runs_aggregated == 0 || iterations == 0 || n_nodes == 0) {
    throw InvalidArgument("mse_curve: empty trace");
  }
  const double denom = static_cast<double>(curve.runs_aggregated * n_nodes);
  curve.mse_db.resize(iterations);
  for (std::size_t i = 0; i < iterations; ++i) curve.mse_db[i] = to_db(acc[i] / denom);
  return curve;
}

/// Mean linear MSE over the last `window` iterations of one run, in dB.
inline double run_steady_state_db(const std::vector<double>& power, std::size_t n_nodes,
                                  std::size_t iterations, std::size_t window) {
  window = std::min(window, iterations);
  if (window == 0) throw InvalidArgument("steady-state window is empty");
  double acc = 0.0;
  for (std::size_t i = iterations - window; i < iterations; ++i) {
    for (std::size_t k = 0; k < n_nodes; ++k) acc += power[i * n_nodes + k];
  }
  return to_db(acc / static_cast<double>(window * n_nodes));
}

/// Mean of a dB curve's last `window` points, averaged in the linear domain.
inline double steady_state_db(const std::vector<double>& curve_db, std::size_t window) {
  window = std::min(window, curve_db.size());
  if (window == 0) throw InvalidArgument("steady-state window is empty");
  double acc = 0.0;
  for (std::size_t i = curve_db.size() - window; i < curve_db.size(); ++i) {
    acc += std::pow(10.0, curve_db[i] / 10.0);
  }
  return to_db(acc / static_cast<double>(window));
}

}  // namespace dce
