#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "dce/algorithm.hpp"
#include "dce/estimators.hpp"
#include "dce/metrics.hpp"
#include "dce/topology.hpp"
#include "dce/types.hpp"

namespace dce {

enum class PhiMode { Shared, PerNode };
enum class DataMode { CompressedConsistent, Physical };

struct SweepSpec {
  std::vector<std::size_t> d{10, 16, 22, 28};
  std::vector<std::size_t> s{3, 5, 7, 9};
  std::vector<unsigned> bits{4, 8, 16};
  std::vector<AlgorithmKind> algorithms{AlgorithmKind::DCE, AlgorithmKind::DiffusionNLMS};

  bool operator==(const SweepSpec&) const = default;
};

/// Defaults reproduce the simulation setup of the reference scenario:
/// N = 20, M = 50, D = 10, S = 3, mu0 = 0.45, eta = 0.08, noise variance 1e-3.
struct ExperimentConfig {
  // [network]
  std::size_t n_nodes = 20;
  double link_probability = 0.2;
  std::optional<Topology> topology;  // fixed graph instead of a per-run draw
  // [signal]
  std::size_t m = 50;
  std::size_t s = 3;
  double noise_variance = 0.001;
  double alpha_min = 0.0;
  double alpha_max = 0.5;
  DataMode data_mode = DataMode::CompressedConsistent;
  bool real_valued = false;
  // [compression]
  std::size_t d = 10;
  PhiMode phi_mode = PhiMode::Shared;
  double eta = 0.08;
  PhiStep phi_step = PhiStep::Normalized;
  // [estimation]
  double mu0 = 0.45;
  double epsilon = kDefaultEpsilon;
  double shrinkage = 0.001;
  std::vector<AlgorithmKind> algorithms{AlgorithmKind::DiffusionNLMS,
                                        AlgorithmKind::SparseDiffusionNLMS, AlgorithmKind::DCE,
                                        AlgorithmKind::DCEOptimizedPhi};
  double omp_residual_tol = 1e-9;
  // [experiment]
  std::size_t iterations = 500;
  std::size_t runs = 50;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::size_t steady_window = 50;
  // [quantizer]
  std::optional<QuantizerSpec> quantizer;
  double clip = 4.0;  // used by the sweep as well
  // [sweep]
  SweepSpec sweep;

  bool operator==(const ExperimentConfig&) const = default;
};

inline void validate(const ExperimentConfig& c) {
  auto fail = [](const std::string& what) { throw ConfigError(what); };
  if (c.n_nodes < 1) fail("nodes must be >= 1");
  if (!(c.link_probability > 0.0 && c.link_probability <= 1.0)) fail("link_probability must be in (0, 1]");
  if (c.topology && c.topology->size() != c.n_nodes) fail("topology size does not match nodes");
  if (c.m < 1) fail("m must be >= 1");
  if (c.s > c.d) fail("s <= d violated (s = " + std::to_string(c.s) + ", d = " + std::to_string(c.d) + ")");
  if (c.d > c.m) fail("d <= m violated (d = " + std::to_string(c.d) + ", m = " + std::to_string(c.m) + ")");
  if (c.d < 1) fail("d must be >= 1");
  if (!(c.noise_variance >= 0.0)) fail("noise_variance must be >= 0");
  if (!(c.alpha_min >= 0.0 && c.alpha_min <= c.alpha_max && c.alpha_max < 1.0)) {
    fail("alpha range must satisfy 0 <= alpha_min <= alpha_max < 1");
  }
  if (!(c.eta >= 0.0)) fail("eta must be >= 0");
  if (!(c.mu0 > 0.0 && c.mu0 < 2.0)) fail("mu0 must lie in (0, 2)");
  if (!(c.epsilon >= 0.0)) fail("epsilon must be >= 0");
  if (!(c.shrinkage >= 0.0)) fail("shrinkage must be >= 0");
  if (!(c.omp_residual_tol >= 0.0)) fail("omp_residual_tol must be >= 0");
  if (c.algorithms.empty()) fail("algorithms list is empty");
  if (c.iterations < 1) fail("iterations must be >= 1");
  if (c.runs < 1) fail("runs must be >= 1");
  if (c.threads < 1) fail("threads must be >= 1");
  if (c.steady_window < 1) fail("steady_window must be >= 1");
  if (!(c.clip > 0.0)) fail("clip must be > 0");
  if (c.quantizer && c.quantizer->bits_per_coefficient < 1) fail("bits must be >= 1");
  if (c.sweep.d.size() != c.sweep.s.size()) fail("sweep: d and s lists must have equal length");
  for (unsigned b : c.sweep.bits) {
    if (b < 1) fail("sweep: bits must be >= 1");
  }
}

/// Sweep pairs are checked against m only when a sweep is actually run, so a
/// small single experiment does not trip over the default sweep grid.
inline void validate_sweep(const ExperimentConfig& c) {
  validate(c);
  const auto& sw = c.sweep;
  if (sw.algorithms.empty()) throw ConfigError("sweep: algorithms list is empty");
  for (std::size_t j = 0; j < sw.d.size(); ++j) {
    if (sw.s[j] > sw.d[j] || sw.d[j] > c.m || sw.d[j] < 1) {
      throw ConfigError("sweep: pair (d = " + std::to_string(sw.d[j]) + ", s = " + std::to_string(sw.s[j]) +
           ") violates s <= d <= m");
    }
  }
}

namespace detail {

/// Drops a trailing "; ..." or "# ..." comment that follows whitespace.
inline std::string strip_comment(const std::string& s) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == ';' || s[i] == '#') && (s[i - 1] == ' ' || s[i - 1] == '\t')) return s.substr(0, i);
  }
  return s;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& raw) {
  std::istringstream is(raw);
  T v{};
  is >> v;
  if (!is || !(is >> std::ws).eof()) throw ConfigError(key + ": cannot parse '" + raw + "'");
  if constexpr (std::is_unsigned_v<T>) {
    if (trim(raw).starts_with("-")) throw ConfigError(key + ": must be non-negative");
  }
  return v;
}

inline bool parse_bool(const std::string& key, const std::string& raw) {
  if (raw == "true" || raw == "1" || raw == "yes") return true;
  if (raw == "false" || raw == "0" || raw == "no") return false;
  throw ConfigError(key + ": expected true or false, got '" + raw + "'");
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream os;
  for (std::size_t j = 0; j < v.size(); ++j) os << (j ? "," : "") << v[j];
  return os.str();
}

inline std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace detail

inline ExperimentConfig parse_config(std::istream& is, const std::string& origin = "<config>") {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(origin + ":" + std::to_string(e.line()) + ": " + e.message());
  }

  ExperimentConfig c;
  std::vector<std::pair<std::size_t, std::string>> topo_rows;
  bool quant_bits_set = false;
  unsigned quant_bits = 0;

  for (const auto& [section, body] : tree) {
    if (!body.data().empty()) throw ConfigError(origin + ": key '" + section + "' outside any section");
    for (const auto& [key, node] : body) {
      const std::string name = section + "." + key;
      const std::string raw = detail::trim(detail::strip_comment(node.data()));
      using detail::parse_number;
      if (section == "topology") {
        topo_rows.emplace_back(parse_number<std::size_t>(name, key), raw);
        continue;
      }
      if (name == "network.nodes") c.n_nodes = parse_number<std::size_t>(name, raw);
      else if (name == "network.link_probability") c.link_probability = parse_number<double>(name, raw);
      else if (name == "signal.m") c.m = parse_number<std::size_t>(name, raw);
      else if (name == "signal.s") c.s = parse_number<std::size_t>(name, raw);
      else if (name == "signal.noise_variance") c.noise_variance = parse_number<double>(name, raw);
      else if (name == "signal.alpha_min") c.alpha_min = parse_number<double>(name, raw);
      else if (name == "signal.alpha_max") c.alpha_max = parse_number<double>(name, raw);
      else if (name == "signal.real_valued") c.real_valued = detail::parse_bool(name, raw);
      else if (name == "signal.data_mode") {
        if (raw == "compressed_consistent") c.data_mode = DataMode::CompressedConsistent;
        else if (raw == "physical") c.data_mode = DataMode::Physical;
        else throw ConfigError(name + ": expected compressed_consistent or physical");
      } else if (name == "compression.d") c.d = parse_number<std::size_t>(name, raw);
      else if (name == "compression.eta") c.eta = parse_number<double>(name, raw);
      else if (name == "compression.phi_mode") {
        if (raw == "shared") c.phi_mode = PhiMode::Shared;
        else if (raw == "per_node") c.phi_mode = PhiMode::PerNode;
        else throw ConfigError(name + ": expected shared or per_node");
      } else if (name == "compression.phi_step") {
        if (raw == "normalized") c.phi_step = PhiStep::Normalized;
        else if (raw == "raw") c.phi_step = PhiStep::Raw;
        else throw ConfigError(name + ": expected normalized or raw");
      } else if (name == "estimation.mu0") c.mu0 = parse_number<double>(name, raw);
      else if (name == "estimation.epsilon") c.epsilon = parse_number<double>(name, raw);
      else if (name == "estimation.shrinkage") c.shrinkage = parse_number<double>(name, raw);
      else if (name == "estimation.omp_residual_tol") c.omp_residual_tol = parse_number<double>(name, raw);
      else if (name == "estimation.algorithms") {
        c.algorithms.clear();
        for (const auto& a : detail::split_list(raw)) c.algorithms.push_back(parse_algorithm(a));
      } else if (name == "experiment.iterations") c.iterations = parse_number<std::size_t>(name, raw);
      else if (name == "experiment.runs") c.runs = parse_number<std::size_t>(name, raw);
      else if (name == "experiment.seed") c.seed = parse_number<std::uint64_t>(name, raw);
      else if (name == "experiment.threads") c.threads = parse_number<std::size_t>(name, raw);
      else if (name == "experiment.steady_window") c.steady_window = parse_number<std::size_t>(name, raw);
      else if (name == "quantizer.bits") {
        quant_bits = parse_number<unsigned>(name, raw);
        quant_bits_set = true;
      } else if (name == "quantizer.clip") c.clip = parse_number<double>(name, raw);
      else if (name == "sweep.d" || name == "sweep.s") {
        std::vector<std::size_t> v;
        for (const auto& t : detail::split_list(raw)) v.push_back(parse_number<std::size_t>(name, t));
        (key == "d" ? c.sweep.d : c.sweep.s) = std::move(v);
      } else if (name == "sweep.bits") {
        c.sweep.bits.clear();
        for (const auto& t : detail::split_list(raw)) c.sweep.bits.push_back(parse_number<unsigned>(name, t));
      } else if (name == "sweep.algorithms") {
        c.sweep.algorithms.clear();
        for (const auto& a : detail::split_list(raw)) c.sweep.algorithms.push_back(parse_algorithm(a));
      } else {
        throw ConfigError(origin + ": unknown key '" + name + "'");
      }
    }
  }
  if (quant_bits_set) c.quantizer = QuantizerSpec{quant_bits, c.clip};
  if (!topo_rows.empty()) {
    c.topology = parse_adjacency_lines(c.n_nodes, topo_rows);
  }
  validate(c);
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file " + path);
  return parse_config(is, path);
}

inline std::string format_config(const ExperimentConfig& c) {
  using detail::fmt_double;
  std::ostringstream os;
  auto algos = [](const std::vector<AlgorithmKind>& v) {
    std::string out;
    for (std::size_t j = 0; j < v.size(); ++j) {
      out += (j ? "," : "");
      out += algorithm_name(v[j]);
    }
    return out;
  };
  os << "[network]\n"
     << "nodes = " << c.n_nodes << '\n'
     << "link_probability = " << fmt_double(c.link_probability) << "\n\n"
     << "[signal]\n"
     << "m = " << c.m << '\n'
     << "s = " << c.s << '\n'
     << "noise_variance = " << fmt_double(c.noise_variance) << '\n'
     << "alpha_min = " << fmt_double(c.alpha_min) << '\n'
     << "alpha_max = " << fmt_double(c.alpha_max) << '\n'
     << "data_mode = " << (c.data_mode == DataMode::Physical ? "physical" : "compressed_consistent") << '\n'
     << "real_valued = " << (c.real_valued ? "true" : "false") << "\n\n"
     << "[compression]\n"
     << "d = " << c.d << '\n'
     << "phi_mode = " << (c.phi_mode == PhiMode::PerNode ? "per_node" : "shared") << '\n'
     << "eta = " << fmt_double(c.eta) << '\n'
     << "phi_step = " << (c.phi_step == PhiStep::Raw ? "raw" : "normalized") << "\n\n"
     << "[estimation]\n"
     << "mu0 = " << fmt_double(c.mu0) << '\n'
     << "epsilon = " << fmt_double(c.epsilon) << '\n'
     << "shrinkage = " << fmt_double(c.shrinkage) << '\n'
     << "omp_residual_tol = " << fmt_double(c.omp_residual_tol) << '\n'
     << "algorithms = " << algos(c.algorithms) << "\n\n"
     << "[experiment]\n"
     << "iterations = " << c.iterations << '\n'
     << "runs = " << c.runs << '\n'
     << "seed = " << c.seed << '\n'
     << "threads = " << c.threads << '\n'
     << "steady_window = " << c.steady_window << "\n\n"
     << "[quantizer]\n";
  if (c.quantizer) os << "bits = " << c.quantizer->bits_per_coefficient << '\n';
  os << "clip = " << fmt_double(c.clip) << "\n\n"
     << "[sweep]\n"
     << "d = " << detail::join(c.sweep.d) << '\n'
     << "s = " << detail::join(c.sweep.s) << '\n'
     << "bits = " << detail::join(c.sweep.bits) << '\n'
     << "algorithms = " << algos(c.sweep.algorithms) << '\n';
  if (c.topology) {
    os << "\n[topology]\n";
    std::istringstream rows(to_adjacency_text(*c.topology));
    std::string line;
    while (std::getline(rows, line)) {
      const auto colon = line.find(':');
      os << line.substr(0, colon) << " =" << line.substr(colon + 1) << '\n';
    }
  }
  return os.str();
}

inline void save_config(const ExperimentConfig& c, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path + " for writing");
  os << format_config(c);
  if (!os) throw Error("write failed: " + path);
}

}  // namespace dce
