#pragma once

#include <array>
#include <string>
#include <string_view>

#include "dce/types.hpp"

namespace dce {

enum class AlgorithmKind {
  DiffusionNLMS,
  SparseDiffusionNLMS,
  DCE,
  DCEOptimizedPhi,
};

inline constexpr std::array<AlgorithmKind, 4> kAllAlgorithms{
    AlgorithmKind::DiffusionNLMS, AlgorithmKind::SparseDiffusionNLMS, AlgorithmKind::DCE,
    AlgorithmKind::DCEOptimizedPhi};

/// Stable identifier used in configs, CLI flags and CSV output.
inline std::string_view algorithm_name(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::DiffusionNLMS: return "dnlms";
    case AlgorithmKind::SparseDiffusionNLMS: return "sparse_dnlms";
    case AlgorithmKind::DCE: return "dce";
    case AlgorithmKind::DCEOptimizedPhi: return "dce_opt";
  }
  return "unknown";
}

inline AlgorithmKind parse_algorithm(std::string_view name) {
  for (AlgorithmKind k : kAllAlgorithms) {
    if (algorithm_name(k) == name) return k;
  }
  throw ConfigError("unknown algorithm '" + std::string(name) +
                    "' (expected dnlms, sparse_dnlms, dce or dce_opt)");
}

/// True for the schemes that adapt in the D-dimensional compressed domain.
inline bool is_compressed(AlgorithmKind kind) {
  return kind == AlgorithmKind::DCE || kind == AlgorithmKind::DCEOptimizedPhi;
}

}  // namespace dce
