#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "strat/core/trace.hpp"
#include "strat/core/poset.hpp"
#include "strat/games/spacetime.hpp"
#include "strat/util/csv.hpp"
#include "strat/util/error.hpp"

namespace strat {

/// Closed set of target states with a decidable membership test.
struct TargetSet {
  std::function<bool(const Eigen::VectorXd&)> member;

  static TargetSet everything() {
    return {[](const Eigen::VectorXd&) { return true; }};
  }
  static TargetSet nothing() {
    return {[](const Eigen::VectorXd&) { return false; }};
  }
  /// Explicit state list, matched within tol in max norm.
  static TargetSet from_states(std::vector<Eigen::VectorXd> states, double tol = 1e-9) {
    return {[states = std::move(states), tol](const Eigen::VectorXd& x) {
      for (const auto& s : states)
        if (s.size() == x.size() && (s - x).lpNorm<Eigen::Infinity>() <= tol) return true;
      return false;
    }};
  }
};

/// Time-set label of one trace: the sample times at which it sits inside the
/// target.
inline std::vector<double> target_times(const Trace& tr, const TargetSet& target) {
  std::vector<double> out;
  for (std::size_t k = 0; k < tr.length(); ++k)
    if (target.member(tr.states[k])) out.push_back(tr.times[k]);
  return out;
}

/// Canonical id for a time-set label, e.g. "{}" or "{4,5,6}".
inline std::string time_set_id(const std::vector<double>& times) {
  std::string out = "{";
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i) out += ",";
    out += format_double(times[i]);
  }
  return out + "}";
}

struct TrajStratification {
  std::vector<std::string> labels; // one per input trace, ids into poset
  Poset poset;                     // realized labels under reverse inclusion
};

/// Stratifies traces by their target-visit time sets. Hitting the target on
/// a larger time set is the deeper behavior, so labels are ordered by
/// reverse inclusion: Z <= Z' iff Z contains Z'.
inline TrajStratification traj_stratify(const std::vector<Trace>& traces, const TargetSet& target) {
  if (traces.empty()) throw DomainError("bad-trace", "need at least one trace");
  std::map<std::string, std::set<double>> realized;
  TrajStratification out;
  for (const auto& tr : traces) {
    tr.check();
    const auto times = target_times(tr, target);
    const std::string id = time_set_id(times);
    realized.emplace(id, std::set<double>(times.begin(), times.end()));
    out.labels.push_back(id);
  }
  std::vector<std::string> elements;
  for (const auto& [id, times] : realized) elements.push_back(id);
  std::vector<std::pair<std::string, std::string>> relations;
  for (const auto& [ida, sa] : realized)
    for (const auto& [idb, sb] : realized)
      if (ida != idb && std::includes(sa.begin(), sa.end(), sb.begin(), sb.end()))
        relations.emplace_back(ida, idb); // sa >= sb as sets means ida <= idb
  out.poset = Poset(elements, transitive_reduction(elements, relations));
  return out;
}

/// Coins visited by a speed-admissible (t, y) trace, as a light-cone chain.
/// The trace is piecewise linear between samples; a coin is visited when the
/// interpolated position passes through it within tol. Visited coins along
/// one admissible trace are always totally ordered, so a chain comes out.
inline std::vector<std::string> traj_chain(const CoinConfig& cfg, const Trace& trace,
                                           double tol = 1e-9) {
  trace.check();
  if (trace.dim() < 1) throw DomainError("bad-trace", "need a y channel");
  for (std::size_t k = 1; k < trace.length(); ++k) {
    const double dt = trace.times[k] - trace.times[k - 1];
    const double dy = std::abs(trace.states[k][0] - trace.states[k - 1][0]);
    if (dy > dt + tol)
      throw DomainError("speed-violation",
                        "|dy| > dt at step " + std::to_string(k - 1) + " -> " + std::to_string(k));
  }
  std::vector<std::pair<double, std::string>> visited;
  for (const auto& coin : cfg.coins) {
    const double tc = coin.at.t;
    if (tc < trace.times.front() - tol || tc > trace.times.back() + tol) continue;
    // interpolate y(tc)
    double y = trace.states.back()[0];
    for (std::size_t k = 0; k + 1 < trace.length(); ++k) {
      if (tc <= trace.times[k + 1] + tol) {
        const double t0 = trace.times[k], t1 = trace.times[k + 1];
        const double w = (t1 > t0) ? std::clamp((tc - t0) / (t1 - t0), 0.0, 1.0) : 0.0;
        y = (1 - w) * trace.states[k][0] + w * trace.states[k + 1][0];
        break;
      }
    }
    if (std::abs(y - coin.at.y) <= tol) visited.emplace_back(tc, coin.label);
  }
  std::sort(visited.begin(), visited.end());
  std::vector<std::string> chain;
  for (const auto& [t, label] : visited) chain.push_back(label);
  return chain;
}

} // namespace strat
