#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "strat/util/csv.hpp"
#include "strat/util/error.hpp"

namespace strat {

/// Discrete-time trajectory of state vectors on a strictly increasing time
/// grid, usually uniform. Channels name the state coordinates so formulas
/// can refer to them directly.
struct Trace {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::vector<std::string> channels; // optional; defaults to x1..xD

  std::size_t length() const { return times.size(); }
  Eigen::Index dim() const { return states.empty() ? 0 : states.front().size(); }

  void check() const {
    if (times.empty() || times.size() != states.size())
      throw DomainError("bad-trace", "need equal, nonzero numbers of times and states");
    for (std::size_t i = 1; i < times.size(); ++i)
      if (!(times[i] > times[i - 1]))
        throw DomainError("bad-trace", "sample times must be strictly increasing");
    for (const auto& s : states)
      if (s.size() != states.front().size())
        throw DomainError("bad-trace", "state vectors must share one dimension");
  }

  /// Uniform step of the grid; trusts the declared spacing of the first gap.
  double step() const {
    if (times.size() < 2) return 1.0;
    return times[1] - times[0];
  }

  int channel_index(const std::string& name) const {
    for (std::size_t i = 0; i < channels.size(); ++i)
      if (channels[i] == name) return static_cast<int>(i);
    return -1;
  }
};

/// Trace files: CSV with header `t, x1..xD` (channel names free-form).
inline Trace read_trace_csv(const std::string& path) {
  const CsvTable t = read_csv_file(path);
  if (t.header.empty() || t.header[0] != "t")
    throw DomainError("bad-trace", path + ": first column must be 't'");
  Trace tr;
  tr.channels.assign(t.header.begin() + 1, t.header.end());
  for (const auto& row : t.rows) {
    tr.times.push_back(row[0]);
    Eigen::VectorXd s(static_cast<Eigen::Index>(row.size()) - 1);
    for (std::size_t i = 1; i < row.size(); ++i) s[static_cast<Eigen::Index>(i) - 1] = row[i];
    tr.states.push_back(std::move(s));
  }
  tr.check();
  return tr;
}

inline void write_trace_csv(const std::string& path, const Trace& tr) {
  CsvTable t;
  t.header.push_back("t");
  for (Eigen::Index d = 0; d < tr.dim(); ++d)
    t.header.push_back(d < static_cast<Eigen::Index>(tr.channels.size())
                           ? tr.channels[static_cast<std::size_t>(d)]
                           : "x" + std::to_string(d + 1));
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    std::vector<double> row{tr.times[i]};
    for (Eigen::Index d = 0; d < tr.states[i].size(); ++d) row.push_back(tr.states[i][d]);
    t.rows.push_back(std::move(row));
  }
  write_csv_file(path, t);
}

} // namespace strat
