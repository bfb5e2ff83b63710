// Command-line front end: simulate, recover, validate-config.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dce/dce.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDiverged = 3;

struct SimulateArgs {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> runs;
  std::optional<std::size_t> threads;
  std::vector<std::string> algos;
  bool sweep = false;
};

int simulate(const SimulateArgs& args) {
  dce::ExperimentConfig cfg;
  if (!args.config.empty()) cfg = dce::load_config(args.config);
  if (args.seed) cfg.seed = *args.seed;
  if (args.runs) cfg.runs = *args.runs;
  if (args.threads) cfg.threads = *args.threads;
  if (!args.algos.empty()) {
    cfg.algorithms.clear();
    for (const auto& a : args.algos) cfg.algorithms.push_back(dce::parse_algorithm(a));
  }
  dce::validate(cfg);

  const std::filesystem::path out(args.out);
  std::filesystem::create_directories(out);

  const dce::ExperimentTrace trace = dce::run_experiment(cfg);
  dce::write_mse_csv(trace, (out / "mse_curve.csv").string());
  dce::write_msd_csv(trace, (out / "msd.csv").string());

  bool all_diverged = false;
  for (const auto& at : trace.algorithms) {
    std::size_t n_div = 0;
    for (bool d : at.diverged) n_div += d ? 1 : 0;
    std::cout << dce::algorithm_name(at.kind) << ": " << (at.diverged.size() - n_div) << "/"
              << at.diverged.size() << " runs aggregated, " << at.coefficients_per_round
              << " coefficients per node per round";
    if (n_div < at.diverged.size()) {
      const auto curve = dce::mse_curve(at, trace.n_nodes, trace.iterations);
      std::cout << ", steady-state MSE " << dce::steady_state_db(curve.mse_db, cfg.steady_window) << " dB";
    }
    std::cout << '\n';
    if (n_div == at.diverged.size()) all_diverged = true;
  }

  if (args.sweep) {
    const auto points = dce::run_sweep(cfg);
    dce::write_sweep_csv(points, (out / "sweep.csv").string());
    std::cout << "sweep: " << points.size() << " points written\n";
  }
  return all_diverged ? kExitDiverged : kExitOk;
}

int recover(const std::string& phi_path, const std::string& input_path, std::size_t sparsity,
            double tol) {
  const dce::MeasurementMatrix phi = dce::read_phi_csv(phi_path);
  const dce::CVector y = dce::read_vector_csv(input_path);
  const dce::OmpResult res = dce::omp_run(phi, y, dce::OmpConfig{sparsity, tol});
  std::cout.precision(17);
  std::cout << "index,real,imag\n";
  for (Eigen::Index j = 0; j < res.estimate.size(); ++j) {
    // + 0.0 folds the -0 a QR solve can leave behind
    std::cout << j << ',' << res.estimate(j).real() + 0.0 << ',' << res.estimate(j).imag() + 0.0 << '\n';
  }
  if (res.stalled) std::cerr << "warning: OMP stalled on a linearly dependent column\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed compressed estimation simulator"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run the Monte-Carlo experiment and write CSV traces");
  sim_cmd->add_option("--config", sim.config, "Experiment config (INI); omitted keys take defaults");
  sim_cmd->add_option("--out", sim.out, "Output directory")->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed, "Master seed override");
  sim_cmd->add_option("--runs", sim.runs, "Monte-Carlo run count override");
  sim_cmd->add_option("--threads", sim.threads, "Worker threads (runs are distributed)");
  sim_cmd->add_option("--algos", sim.algos, "Algorithms: dnlms, sparse_dnlms, dce, dce_opt")->delimiter(',');
  sim_cmd->add_flag("--sweep", sim.sweep, "Also run the (d, s, bits) quantization sweep");

  std::string phi_path, input_path;
  std::size_t sparsity = 0;
  double tol = 1e-9;
  auto* rec_cmd = app.add_subcommand("recover", "Standalone OMP reconstruction");
  rec_cmd->add_option("--phi", phi_path, "Measurement matrix CSV (row,col,real,imag)")->required();
  rec_cmd->add_option("--input", input_path, "Compressed vector CSV (real,imag per row)")->required();
  rec_cmd->add_option("--sparsity", sparsity, "Support size")->required();
  rec_cmd->add_option("--tol", tol, "Residual tolerance")->capture_default_str();

  std::string validate_path;
  auto* val_cmd = app.add_subcommand("validate-config", "Parse and check a config file");
  val_cmd->add_option("path", validate_path, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*sim_cmd) return simulate(sim);
    if (*rec_cmd) return recover(phi_path, input_path, sparsity, tol);
    if (*val_cmd) {
      const auto cfg = dce::load_config(validate_path);
      std::cout << dce::format_config(cfg);
      return kExitOk;
    }
  } catch (const dce::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}
