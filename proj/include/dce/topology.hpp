#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "dce/rng.hpp"
#include "dce/types.hpp"

namespace dce {

// Undirected graph over N nodes. Every node is linked to itself, so a
// neighborhood always contains its own node.
class Topology {
 public:
  Topology() = default;

  explicit Topology(std::size_t n_nodes) : n_(n_nodes), adj_(n_nodes * n_nodes, false) {
    for (std::size_t k = 0; k < n_; ++k) adj_[k * n_ + k] = true;
  }

  std::size_t size() const { return n_; }

  bool linked(std::size_t k, std::size_t l) const { return adj_[k * n_ + l]; }

  void link(std::size_t k, std::size_t l) {
    if (k >= n_ || l >= n_) throw InvalidArgument("link: node index out of range");
    adj_[k * n_ + l] = true;
    adj_[l * n_ + k] = true;
  }

  /// Neighborhood of k, including k, in ascending order.
  std::vector<std::size_t> neighbors(std::size_t k) const {
    std::vector<std::size_t> out;
    for (std::size_t l = 0; l < n_; ++l) {
      if (linked(k, l)) out.push_back(l);
    }
    return out;
  }

  /// |N_k|, counting k itself.
  std::size_t degree(std::size_t k) const {
    std::size_t d = 0;
    for (std::size_t l = 0; l < n_; ++l) d += linked(k, l) ? 1 : 0;
    return d;
  }

  /// Component label per node; labels are the smallest node index in the component.
  std::vector<std::size_t> components() const {
    std::vector<std::size_t> label(n_, n_);
    for (std::size_t root = 0; root < n_; ++root) {
      if (label[root] != n_) continue;
      std::queue<std::size_t> frontier;
      frontier.push(root);
      label[root] = root;
      while (!frontier.empty()) {
        const std::size_t k = frontier.front();
        frontier.pop();
        for (std::size_t l = 0; l < n_; ++l) {
          if (linked(k, l) && label[l] == n_) {
            label[l] = root;
            frontier.push(l);
          }
        }
      }
    }
    return label;
  }

  bool connected() const {
    const auto label = components();
    return std::all_of(label.begin(), label.end(), [](std::size_t c) { return c == 0; });
  }

  bool operator==(const Topology&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<bool> adj_;
};

/// Row-stochastic combination weights c_kl.
struct CombinationMatrix {
  RMatrix weights;

  std::size_t size() const { return static_cast<std::size_t>(weights.rows()); }
  double operator()(std::size_t k, std::size_t l) const {
    return weights(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
  }
};

/// Erdos-Renyi style draw followed by a deterministic repair: while more than
/// one component exists, the smallest node of component 0 is linked to the
/// smallest node of the next component.
inline Topology generate_topology(std::size_t n_nodes, double link_probability, Engine& rng) {
  if (n_nodes < 1) throw InvalidArgument("generate_topology: n_nodes must be >= 1");
  if (!(link_probability > 0.0 && link_probability <= 1.0)) {
    throw InvalidArgument("generate_topology: link_probability must be in (0, 1]");
  }
  Topology topo(n_nodes);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (std::size_t k = 0; k < n_nodes; ++k) {
    for (std::size_t l = k + 1; l < n_nodes; ++l) {
      if (unif(rng) < link_probability) topo.link(k, l);
    }
  }
  for (;;) {
    const auto label = topo.components();
    const auto other = std::find_if(label.begin(), label.end(), [](std::size_t c) { return c != 0; });
    if (other == label.end()) break;
    topo.link(0, *other);
  }
  return topo;
}

inline CombinationMatrix metropolis_weights(const Topology& topo) {
  const std::size_t n = topo.size();
  CombinationMatrix c{RMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))};
  std::vector<std::size_t> deg(n);
  for (std::size_t k = 0; k < n; ++k) deg[k] = topo.degree(k);
  for (std::size_t k = 0; k < n; ++k) {
    double off = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
      if (l == k || !topo.linked(k, l)) continue;
      const double w = 1.0 / static_cast<double>(std::max(deg[k], deg[l]));
      c.weights(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = w;
      off += w;
    }
    c.weights(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = 1.0 - off;
  }
  return c;
}

// Adjacency-list text: one line per node, "k: l1 l2 ...". Self links are
// implicit and never written; links may be listed on either endpoint.
inline std::string to_adjacency_text(const Topology& topo) {
  std::ostringstream os;
  for (std::size_t k = 0; k < topo.size(); ++k) {
    os << k << ':';
    for (std::size_t l : topo.neighbors(k)) {
      if (l != k) os << ' ' << l;
    }
    os << '\n';
  }
  return os.str();
}

inline Topology parse_adjacency_lines(std::size_t n_nodes,
                                      const std::vector<std::pair<std::size_t, std::string>>& rows) {
  Topology topo(n_nodes);
  for (const auto& [k, list] : rows) {
    if (k >= n_nodes) {
      throw ConfigError("topology: node " + std::to_string(k) + " out of range for " +
                        std::to_string(n_nodes) + " nodes");
    }
    std::istringstream is(list);
    std::string tok;
    while (is >> tok) {
      std::size_t l = 0;
      try {
        std::size_t used = 0;
        l = std::stoul(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ConfigError("topology: bad neighbor '" + tok + "' for node " + std::to_string(k));
      }
      if (l >= n_nodes) {
        throw ConfigError("topology: neighbor " + std::to_string(l) + " of node " +
                          std::to_string(k) + " out of range");
      }
      topo.link(k, l);
    }
  }
  if (!topo.connected()) throw ConfigError("topology: graph is not connected");
  return topo;
}

inline Topology from_adjacency_text(std::size_t n_nodes, const std::string& text) {
  std::vector<std::pair<std::size_t, std::string>> rows;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("topology line " + std::to_string(lineno) + ": expected 'node: neighbors'");
    }
    std::size_t k = 0;
    try {
      k = std::stoul(line.substr(0, colon));
    } catch (const std::exception&) {
      throw ConfigError("topology line " + std::to_string(lineno) + ": bad node index");
    }
    rows.emplace_back(k, line.substr(colon + 1));
  }
  return parse_adjacency_lines(n_nodes, rows);
}

}  // namespace dce
