#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

#include "dce/compression.hpp"
#include "dce/config.hpp"
#include "dce/estimators.hpp"
#include "dce/metrics.hpp"
#include "dce/rng.hpp"
#include "dce/signal.hpp"
#include "dce/topology.hpp"

namespace dce {

/// Everything drawn once per Monte-Carlo run and shared by all algorithms.
struct RunSetup {
  Topology topology;
  SparseVector omega0;
  std::vector<MeasurementMatrix> phis;  // initial matrix per node
  std::vector<double> alphas;
};

inline RunSetup make_run_setup(const ExperimentConfig& cfg, const RngPlan& plan, std::size_t run) {
  RunSetup setup;
  if (cfg.topology) {
    setup.topology = *cfg.topology;
  } else {
    Engine rng = plan.stream(run, StreamPurpose::Topology);
    setup.topology = generate_topology(cfg.n_nodes, cfg.link_probability, rng);
  }
  {
    Engine rng = plan.stream(run, StreamPurpose::GroundTruth);
    setup.omega0 = generate_ground_truth(cfg.m, cfg.s, rng, cfg.real_valued);
  }
  const auto d = static_cast<Eigen::Index>(cfg.d);
  const auto m = static_cast<Eigen::Index>(cfg.m);
  if (cfg.phi_mode == PhiMode::Shared) {
    Engine rng = plan.stream(run, StreamPurpose::Measurement, 0);
    setup.phis.assign(cfg.n_nodes, init_gaussian(d, m, rng, cfg.real_valued));
  } else {
    for (std::size_t k = 0; k < cfg.n_nodes; ++k) {
      Engine rng = plan.stream(run, StreamPurpose::Measurement, k);
      setup.phis.push_back(init_gaussian(d, m, rng, cfg.real_valued));
    }
  }
  Engine rng = plan.stream(run, StreamPurpose::Correlation);
  std::uniform_real_distribution<double> unif(cfg.alpha_min, cfg.alpha_max);
  for (std::size_t k = 0; k < cfg.n_nodes; ++k) {
    setup.alphas.push_back(cfg.alpha_max > cfg.alpha_min ? unif(rng) : cfg.alpha_min);
  }
  return setup;
}

struct RunResult {
  std::vector<std::vector<double>> error_power;  // per algorithm, [iteration * N + node]
  std::vector<std::vector<double>> final_msd;    // per algorithm, per node
  std::vector<bool> diverged;                    // per algorithm
};

inline RoundOptions round_options(const ExperimentConfig& cfg) {
  RoundOptions opt;
  opt.shrinkage = cfg.shrinkage;
  opt.quantizer = cfg.quantizer;
  opt.omp = OmpConfig{cfg.s, cfg.omp_residual_tol};
  opt.eta = cfg.eta;
  opt.phi_step = cfg.phi_step;
  return opt;
}

/// Simulates every configured algorithm on the same data realization. All
/// algorithms advance in lock step so each sees the identical x_k(i), n_k(i).
inline RunResult simulate_run(const ExperimentConfig& cfg, const RngPlan& plan, std::size_t run) {
  const RunSetup setup = make_run_setup(cfg, plan, run);
  const std::size_t n = cfg.n_nodes;
  const std::size_t n_alg = cfg.algorithms.size();
  const RoundOptions opt = round_options(cfg);
  const auto m = static_cast<Eigen::Index>(cfg.m);

  std::vector<Network> nets;
  for (AlgorithmKind kind : cfg.algorithms) {
    nets.push_back(make_network(kind, setup.topology, m, setup.phis, cfg.mu0, cfg.epsilon));
  }

  std::vector<RegressorState> regressors;
  std::vector<Engine> regressor_rng, noise_rng;
  for (std::size_t k = 0; k < n; ++k) {
    regressor_rng.push_back(plan.stream(run, StreamPurpose::Regressor, k));
    noise_rng.push_back(plan.stream(run, StreamPurpose::Noise, k));
    regressors.push_back(make_regressor(k, setup.alphas[k], cfg.m, regressor_rng[k], cfg.real_valued));
  }
  const NoiseModel noise{cfg.noise_variance, cfg.real_valued};

  // Compressed target and compressed regressor under the initial matrices.
  std::vector<CVector> static_target(n);
  for (std::size_t k = 0; k < n; ++k) static_target[k] = setup.phis[k].entries * setup.omega0.coeffs;

  RunResult result;
  result.error_power.assign(n_alg, std::vector<double>(cfg.iterations * n,
                                                       std::numeric_limits<double>::quiet_NaN()));
  result.final_msd.assign(n_alg, std::vector<double>(n, std::numeric_limits<double>::quiet_NaN()));
  result.diverged.assign(n_alg, false);

  std::vector<cplx> noise_now(n), d_static(n);
  std::vector<CVector> xbar_static(n);
  RoundInputs inputs;
  inputs.regressors.resize(n);
  inputs.desired.resize(n);

  for (std::size_t i = 0; i < cfg.iterations; ++i) {
    if (i > 0) {
      for (std::size_t k = 0; k < n; ++k) regressors[k] = regressor_step(std::move(regressors[k]), regressor_rng[k]);
    }
    for (std::size_t k = 0; k < n; ++k) {
      noise_now[k] = noise.draw(noise_rng[k]);
      xbar_static[k] = compress(setup.phis[k], regressors[k].buffer);
      d_static[k] = cfg.data_mode == DataMode::Physical
                        ? measure_full(setup.omega0, regressors[k].buffer, noise_now[k])
                        : static_target[k].dot(xbar_static[k]) + noise_now[k];
    }

    for (std::size_t a = 0; a < n_alg; ++a) {
      if (result.diverged[a]) continue;
      Network& net = nets[a];
      for (std::size_t k = 0; k < n; ++k) {
        switch (net.kind) {
          case AlgorithmKind::DiffusionNLMS:
          case AlgorithmKind::SparseDiffusionNLMS:
            inputs.regressors[k] = regressors[k].buffer;
            inputs.desired[k] = d_static[k];
            break;
          case AlgorithmKind::DCE:
            inputs.regressors[k] = xbar_static[k];
            inputs.desired[k] = d_static[k];
            break;
          case AlgorithmKind::DCEOptimizedPhi:
            // The data model follows the node's current, adapted matrix.
            inputs.regressors[k] = compress(net.phis[k], regressors[k].buffer);
            inputs.desired[k] =
                cfg.data_mode == DataMode::Physical
                    ? d_static[k]
                    : measure_compressed(setup.omega0, net.phis[k], inputs.regressors[k], noise_now[k]);
            break;
        }
      }
      try {
        const RoundReport rep = run_round(net, inputs, opt);
        for (std::size_t k = 0; k < n; ++k) result.error_power[a][i * n + k] = std::norm(rep.a_priori_errors[k]);
      } catch (const DivergenceError&) {
        result.diverged[a] = true;
      }
    }
  }

  for (std::size_t a = 0; a < n_alg; ++a) {
    if (result.diverged[a]) continue;
    const Network& net = nets[a];
    if (is_compressed(net.kind)) {
      const auto est = finalize_dce(net, opt.omp);
      for (std::size_t k = 0; k < n; ++k) result.final_msd[a][k] = msd(est[k], setup.omega0);
    } else {
      for (std::size_t k = 0; k < n; ++k) result.final_msd[a][k] = msd(net.nodes[k].omega, setup.omega0);
    }
  }
  return result;
}

/// Runs all Monte-Carlo runs. With threads > 1 runs are distributed over a
/// worker pool; every run draws only from its own streams, so the output does
/// not depend on the thread count.
inline ExperimentTrace run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const RngPlan plan(cfg.seed);
  std::vector<RunResult> runs(cfg.runs);

  if (cfg.threads <= 1 || cfg.runs == 1) {
    for (std::size_t r = 0; r < cfg.runs; ++r) runs[r] = simulate_run(cfg, plan, r);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      for (std::size_t r = next++; r < cfg.runs; r = next++) {
        try {
          runs[r] = simulate_run(cfg, plan, r);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < std::min(cfg.threads, cfg.runs); ++t) pool.emplace_back(worker);
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  ExperimentTrace trace;
  trace.n_nodes = cfg.n_nodes;
  trace.iterations = cfg.iterations;
  trace.runs = cfg.runs;
  for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
    AlgorithmTrace at;
    at.kind = cfg.algorithms[a];
    at.coefficients_per_round = coefficients_per_round(at.kind, cfg.m, cfg.d);
    at.bits_per_round = cfg.quantizer ? bits_per_round(at.kind, cfg.m, cfg.d, *cfg.quantizer) : 0;
    for (auto& r : runs) {
      at.error_power.push_back(std::move(r.error_power[a]));
      at.final_msd.push_back(std::move(r.final_msd[a]));
      at.diverged.push_back(r.diverged[a]);
    }
    trace.algorithms.push_back(std::move(at));
  }
  return trace;
}

struct SweepPoint {
  AlgorithmKind algorithm = AlgorithmKind::DCE;
  std::size_t d = 0;
  std::size_t s = 0;
  unsigned bits = 0;
  double final_mse_db = 0.0;             // steady-state level of the run-averaged curve
  std::vector<double> run_final_mse_db;  // same quantity per non-diverged run
};

/// Bit-budget study: one experiment per (d, s) pair and bits level, with
/// quantized exchange, reporting the steady-state MSE of each algorithm.
inline std::vector<SweepPoint> run_sweep(const ExperimentConfig& base) {
  validate_sweep(base);
  std::vector<SweepPoint> out;
  for (std::size_t j = 0; j < base.sweep.d.size(); ++j) {
    for (unsigned bits : base.sweep.bits) {
      ExperimentConfig cfg = base;
      cfg.d = base.sweep.d[j];
      cfg.s = base.sweep.s[j];
      cfg.algorithms = base.sweep.algorithms;
      cfg.quantizer = QuantizerSpec{bits, base.clip};
      const ExperimentTrace trace = run_experiment(cfg);
      for (const auto& at : trace.algorithms) {
        SweepPoint p{at.kind, cfg.d, cfg.s, bits, std::numeric_limits<double>::quiet_NaN(), {}};
        for (std::size_t r = 0; r < at.error_power.size(); ++r) {
          if (at.diverged[r]) continue;
          p.run_final_mse_db.push_back(
              run_steady_state_db(at.error_power[r], trace.n_nodes, trace.iterations, cfg.steady_window));
        }
        if (!p.run_final_mse_db.empty()) {
          p.final_mse_db = steady_state_db(mse_curve(at, trace.n_nodes, trace.iterations).mse_db,
                                           cfg.steady_window);
        }
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

}  // namespace dce
