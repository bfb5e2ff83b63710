#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dce/algorithm.hpp"
#include "dce/compression.hpp"
#include "dce/metrics.hpp"
#include "dce/recovery.hpp"
#include "dce/topology.hpp"
#include "dce/types.hpp"

namespace dce {

inline constexpr double kDefaultEpsilon = 1e-8;

/// Per-node estimator. For full-dimension algorithms omega/psi have length M,
/// for the compressed schemes they have length D.
struct NodeState {
  std::size_t node_id = 0;
  CVector omega;
  CVector psi;
  double mu0 = 0.45;
  double eps = kDefaultEpsilon;
};

inline NodeState make_node(std::size_t node_id, Eigen::Index dim, double mu0,
                           double eps = kDefaultEpsilon) {
  if (!(mu0 > 0.0 && mu0 < 2.0)) throw InvalidArgument("node: mu0 must lie in (0, 2)");
  if (!(eps >= 0.0)) throw InvalidArgument("node: eps must be >= 0");
  return NodeState{node_id, CVector::Zero(dim), CVector::Zero(dim), mu0, eps};
}

/// e = d - omega^H x
inline cplx a_priori_error(const NodeState& state, const CVector& x, cplx d) {
  detail::require_same(state.omega.size(), x.size(), "a_priori_error");
  return d - state.omega.dot(x);
}

/// psi = omega + mu0 / (x^H x + eps) * e* x
inline NodeState nlms_adapt(NodeState state, const CVector& x, cplx d) {
  const cplx e = a_priori_error(state, x, d);
  const double energy = x.squaredNorm() + state.eps;
  // x = 0 with eps = 0 would give 0/0; the update term is zero there anyway.
  const double mu = energy > 0.0 ? state.mu0 / energy : 0.0;
  state.psi = state.omega + (mu * std::conj(e)) * x;
  return state;
}

namespace detail {

inline double sign_part(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

inline cplx csign(cplx z) { return {sign_part(z.real()), sign_part(z.imag())}; }

}  // namespace detail

/// Zero-attracting NLMS: the NLMS step followed by a shrinkage of rho
/// along the componentwise sign of omega.
inline NodeState za_nlms_adapt(NodeState state, const CVector& x, cplx d, double rho) {
  if (!(rho >= 0.0)) throw InvalidArgument("za_nlms_adapt: rho must be >= 0");
  const CVector omega = state.omega;
  state = nlms_adapt(std::move(state), x, d);
  if (rho > 0.0) {
    state.psi -= rho * omega.unaryExpr([](cplx z) { return detail::csign(z); });
  }
  return state;
}

/// Compressed-domain adaptation; identical update with x_bar of length D.
inline NodeState dce_adapt(NodeState state, const CVector& x_bar, cplx d) {
  return nlms_adapt(std::move(state), x_bar, d);
}

/// sum_l c_kl psi_l over the neighborhood.
inline CVector combine(std::span<const CVector> psis, std::span<const double> weights) {
  if (psis.size() != weights.size()) {
    throw DimensionMismatch("combine: " + std::to_string(psis.size()) + " vectors but " +
                            std::to_string(weights.size()) + " weights");
  }
  if (psis.empty()) throw InvalidArgument("combine: empty neighborhood");
  CVector out = CVector::Zero(psis.front().size());
  for (std::size_t j = 0; j < psis.size(); ++j) {
    detail::require_same(out.size(), psis[j].size(), "combine");
    out += weights[j] * psis[j];
  }
  return out;
}

/// How the adaptive measurement-matrix step is scaled.
enum class PhiStep {
  Raw,         // eta as given
  Normalized,  // eta / (||x_bar||^2 ||omega_re||^2)
};

struct RoundOptions {
  double shrinkage = 0.001;                 // rho, sparse diffusion NLMS only
  std::optional<QuantizerSpec> quantizer;   // applied to broadcast psi values
  OmpConfig omp;                            // used by DCEOptimizedPhi
  double eta = 0.08;                        // used by DCEOptimizedPhi
  PhiStep phi_step = PhiStep::Normalized;
};

/// Everything one algorithm instance carries between rounds.
struct Network {
  AlgorithmKind kind = AlgorithmKind::DCE;
  CombinationMatrix weights;
  std::vector<std::vector<std::size_t>> neighborhoods;
  std::vector<NodeState> nodes;
  std::vector<MeasurementMatrix> phis;  // compressed schemes only, one per node
  std::vector<CVector> reconstructions; // latest f_OMP output, DCEOptimizedPhi only

  std::size_t size() const { return nodes.size(); }

  /// Length of omega at every node.
  Eigen::Index working_dimension() const { return nodes.empty() ? 0 : nodes.front().omega.size(); }
};

/// Builds a network with zero initial estimates. `phis` must hold one matrix
/// per node for the compressed schemes and is ignored otherwise.
inline Network make_network(AlgorithmKind kind, const Topology& topo, Eigen::Index m,
                            std::vector<MeasurementMatrix> phis, double mu0,
                            double eps = kDefaultEpsilon) {
  Network net;
  net.kind = kind;
  net.weights = metropolis_weights(topo);
  const std::size_t n = topo.size();
  Eigen::Index dim = m;
  if (is_compressed(kind)) {
    if (phis.size() != n) {
      throw DimensionMismatch("make_network: need one measurement matrix per node");
    }
    dim = phis.front().d();
    for (const auto& p : phis) {
      detail::require_same(dim, p.d(), "make_network (phi rows)");
      detail::require_same(m, p.m(), "make_network (phi columns)");
    }
    net.phis = std::move(phis);
    if (kind == AlgorithmKind::DCEOptimizedPhi) net.reconstructions.assign(n, CVector::Zero(m));
  }
  for (std::size_t k = 0; k < n; ++k) {
    net.neighborhoods.push_back(topo.neighbors(k));
    net.nodes.push_back(make_node(k, dim, mu0, eps));
  }
  return net;
}

/// Per-node data for one time instant, already in the working dimension
/// (x for full-dimension algorithms, x_bar = Phi_k x for compressed ones).
struct RoundInputs {
  std::vector<CVector> regressors;
  std::vector<cplx> desired;
};

struct RoundReport {
  std::vector<cplx> a_priori_errors;
  std::size_t coefficients_exchanged_per_node = 0;
};

/// One synchronous adapt / exchange / combine round. Every node adapts on the
/// iteration-i data first; combination then reads only those psi values.
/// DCEOptimizedPhi additionally reconstructs omega_re = f_OMP(omega_bar_k(i+1))
/// and steps Phi_k once per node.
inline RoundReport run_round(Network& net, const RoundInputs& in, const RoundOptions& opt) {
  const std::size_t n = net.size();
  if (in.regressors.size() != n || in.desired.size() != n) {
    throw DimensionMismatch("run_round: inputs must cover every node");
  }
  RoundReport report;
  report.a_priori_errors.resize(n);
  report.coefficients_exchanged_per_node = static_cast<std::size_t>(net.working_dimension());

  std::vector<cplx> outputs(n);
  for (std::size_t k = 0; k < n; ++k) {
    NodeState& node = net.nodes[k];
    report.a_priori_errors[k] = a_priori_error(node, in.regressors[k], in.desired[k]);
    outputs[k] = node.omega.dot(in.regressors[k]);
    switch (net.kind) {
      case AlgorithmKind::DiffusionNLMS:
        node = nlms_adapt(std::move(node), in.regressors[k], in.desired[k]);
        break;
      case AlgorithmKind::SparseDiffusionNLMS:
        node = za_nlms_adapt(std::move(node), in.regressors[k], in.desired[k], opt.shrinkage);
        break;
      case AlgorithmKind::DCE:
      case AlgorithmKind::DCEOptimizedPhi:
        node = dce_adapt(std::move(node), in.regressors[k], in.desired[k]);
        break;
    }
  }

  // Exchange: what a neighbor receives is the (optionally quantized) psi.
  std::vector<CVector> broadcast(n);
  for (std::size_t k = 0; k < n; ++k) {
    broadcast[k] = opt.quantizer ? quantize(net.nodes[k].psi, *opt.quantizer) : net.nodes[k].psi;
  }

  std::vector<CVector> combined(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& hood = net.neighborhoods[k];
    std::vector<CVector> psis;
    std::vector<double> w;
    psis.reserve(hood.size());
    w.reserve(hood.size());
    for (std::size_t l : hood) {
      psis.push_back(l == k ? net.nodes[k].psi : broadcast[l]);
      w.push_back(net.weights(k, l));
    }
    combined[k] = combine(psis, w);
  }
  for (std::size_t k = 0; k < n; ++k) net.nodes[k].omega = std::move(combined[k]);

  if (net.kind == AlgorithmKind::DCEOptimizedPhi) {
    for (std::size_t k = 0; k < n; ++k) {
      net.reconstructions[k] = omp_reconstruct(net.phis[k], net.nodes[k].omega, opt.omp);
      net.phis[k] = opt.phi_step == PhiStep::Normalized
                        ? phi_update_normalized(net.phis[k], in.regressors[k], outputs[k],
                                                net.reconstructions[k], opt.eta)
                        : phi_update(net.phis[k], in.regressors[k], outputs[k],
                                     net.reconstructions[k], opt.eta);
    }
  }
  return report;
}

/// Decompresses every node's compressed estimate with its own matrix.
inline std::vector<CVector> finalize_dce(const Network& net, const OmpConfig& omp) {
  if (!is_compressed(net.kind)) throw InvalidArgument("finalize_dce: network is not compressed");
  std::vector<CVector> out;
  out.reserve(net.size());
  for (std::size_t k = 0; k < net.size(); ++k) {
    out.push_back(omp_reconstruct(net.phis[k], net.nodes[k].omega, omp));
  }
  return out;
}

}  // namespace dce
