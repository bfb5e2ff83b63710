#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dce/experiment.hpp"
#include "dce/metrics.hpp"

namespace dce {

// Output schemas:
//   mse_curve.csv  algorithm,iteration,mse_db,runs_aggregated
//   msd.csv        algorithm,run,node,msd
//   sweep.csv      algorithm,d,s,bits,final_mse_db
// Iterations are 1-based. Rows follow the algorithm order of the experiment.

namespace detail {

inline std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path + " for writing");
  os.precision(17);
  return os;
}

inline void finish(std::ofstream& os, const std::string& path) {
  os.flush();
  if (!os) throw Error("write failed: " + path);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(trim(cell));
  return out;
}

}  // namespace detail

inline void write_mse_csv(const ExperimentTrace& trace, const std::string& path) {
  auto os = detail::open_out(path);
  os << "algorithm,iteration,mse_db,runs_aggregated\n";
  for (const auto& at : trace.algorithms) {
    std::size_t aggregated = 0;
    for (bool d : at.diverged) aggregated += d ? 0 : 1;
    std::vector<double> curve(trace.iterations, std::nan(""));
    if (aggregated > 0) curve = mse_curve(at, trace.n_nodes, trace.iterations).mse_db;
    for (std::size_t i = 0; i < trace.iterations; ++i) {
      os << algorithm_name(at.kind) << ',' << (i + 1) << ',' << curve[i] << ',' << aggregated << '\n';
    }
  }
  detail::finish(os, path);
}

inline void write_msd_csv(const ExperimentTrace& trace, const std::string& path) {
  auto os = detail::open_out(path);
  os << "algorithm,run,node,msd\n";
  for (const auto& at : trace.algorithms) {
    for (std::size_t r = 0; r < at.final_msd.size(); ++r) {
      if (at.diverged[r]) continue;
      for (std::size_t k = 0; k < at.final_msd[r].size(); ++k) {
        os << algorithm_name(at.kind) << ',' << r << ',' << k << ',' << at.final_msd[r][k] << '\n';
      }
    }
  }
  detail::finish(os, path);
}

inline void write_sweep_csv(const std::vector<SweepPoint>& points, const std::string& path) {
  auto os = detail::open_out(path);
  os << "algorithm,d,s,bits,final_mse_db\n";
  for (const auto& p : points) {
    os << algorithm_name(p.algorithm) << ',' << p.d << ',' << p.s << ',' << p.bits << ','
       << p.final_mse_db << '\n';
  }
  detail::finish(os, path);
}

struct MseCsvRow {
  std::string algorithm;
  std::size_t iteration = 0;
  double mse_db = 0.0;
  std::size_t runs_aggregated = 0;
};

inline std::vector<MseCsvRow> read_mse_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path);
  std::string line;
  if (!std::getline(is, line) || detail::trim(line) != "algorithm,iteration,mse_db,runs_aggregated") {
    throw Error(path + ": unexpected header");
  }
  std::vector<MseCsvRow> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    const auto cells = detail::split_csv_line(line);
    if (cells.size() != 4) throw Error(path + ":" + std::to_string(lineno) + ": expected 4 columns");
    try {
      rows.push_back({cells[0], std::stoul(cells[1]), std::stod(cells[2]), std::stoul(cells[3])});
    } catch (const std::exception&) {
      throw Error(path + ":" + std::to_string(lineno) + ": malformed row");
    }
  }
  return rows;
}

/// Reads a plain column of complex values ("real,imag" per line, optional
/// header) as used by the standalone recovery command.
inline CVector read_vector_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path);
  std::vector<cplx> vals;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto cells = detail::split_csv_line(line);
    if (cells.empty() || cells[0].empty()) continue;
    // Header rows and an optional leading index column are tolerated.
    std::vector<double> nums;
    bool numeric = true;
    for (const auto& c : cells) {
      try {
        std::size_t used = 0;
        nums.push_back(std::stod(c, &used));
        if (used != c.size()) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric) {
      if (vals.empty()) continue;
      throw Error(path + ":" + std::to_string(lineno) + ": non-numeric row");
    }
    if (nums.size() == 1) vals.emplace_back(nums[0], 0.0);
    else if (nums.size() == 2) vals.emplace_back(nums[0], nums[1]);
    else if (nums.size() == 3) vals.emplace_back(nums[1], nums[2]);
    else throw Error(path + ":" + std::to_string(lineno) + ": expected real[,imag]");
  }
  CVector out(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t j = 0; j < vals.size(); ++j) out(static_cast<Eigen::Index>(j)) = vals[j];
  return out;
}

}  // namespace dce
