#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "strat/core/poset.hpp"
#include "strat/games/spacetime.hpp"
#include "strat/util/error.hpp"
#include "strat/util/parallel.hpp"

namespace strat {

/// Label subsets whose future cones share points within the horizon, kept
/// only when maximal for their intersection, ordered by inclusion. The start
/// S belongs to every element. apexes holds the least point of each
/// intersection.
struct OverlapPoset {
  Poset poset;
  std::map<std::string, SpaceTimePoint> apexes;

  /// Canonical element id: "S" joined with the sorted coin labels.
  static std::string sigma_id(const std::set<std::string>& coin_labels) {
    std::string out = "S";
    for (const auto& l : coin_labels) out += "," + l;
    return out;
  }
};

namespace detail {

inline Poset inclusion_poset(const std::vector<std::set<std::string>>& sets) {
  std::vector<std::string> elements;
  for (const auto& s : sets) elements.push_back(OverlapPoset::sigma_id(s));
  std::vector<std::pair<std::string, std::string>> relations;
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = 0; j < sets.size(); ++j)
      if (i != j && std::includes(sets[j].begin(), sets[j].end(),
                                  sets[i].begin(), sets[i].end()))
        relations.emplace_back(elements[i], elements[j]);
  return Poset(std::move(elements), transitive_reduction(elements, relations));
}

} // namespace detail

/// Builds the overlap poset by subset enumeration: the apex of each subset
/// is the iterated cone join of its coins, the subset survives iff its apex
/// is inside the horizon and no strict superset shares it. Coordinates are
/// dyadic by convention, so apex equality is tested at 1e-9.
inline OverlapPoset overlap_poset(const CoinConfig& cfg) {
  cfg.check();
  const std::size_t n = cfg.coins.size();
  if (n > 12) throw DomainError("config-invalid", "subset enumeration capped at 12 coins");

  const std::size_t total = std::size_t{1} << n;
  std::vector<SpaceTimePoint> apex(total);
  apex[0] = {0.0, 0.0}; // the start S
  for (std::size_t mask = 1; mask < total; ++mask) {
    const std::size_t low = mask & (mask - 1);
    const std::size_t bit = mask ^ low;
    std::size_t idx = 0;
    while (!(bit >> idx & 1)) ++idx;
    apex[mask] = cone_join(apex[low], cfg.coins[idx].at);
  }

  constexpr double kApexTol = 1e-9;
  auto same_apex = [&](std::size_t a, std::size_t b) {
    return std::abs(apex[a].t - apex[b].t) <= kApexTol &&
           std::abs(apex[a].y - apex[b].y) <= kApexTol;
  };

  std::vector<std::set<std::string>> kept;
  OverlapPoset out;
  for (std::size_t mask = 0; mask < total; ++mask) {
    if (apex[mask].t > cfg.horizon + kApexTol) continue;
    bool maximal = true;
    // strict supersets: extend by one absent coin; iterating single
    // extensions suffices because apex is monotone along inclusion
    for (std::size_t idx = 0; idx < n && maximal; ++idx) {
      if (mask >> idx & 1) continue;
      const std::size_t super = mask | (std::size_t{1} << idx);
      if (apex[super].t <= cfg.horizon + kApexTol && same_apex(mask, super)) maximal = false;
    }
    if (!maximal) continue;
    std::set<std::string> labels;
    for (std::size_t idx = 0; idx < n; ++idx)
      if (mask >> idx & 1) labels.insert(cfg.coins[idx].label);
    out.apexes[OverlapPoset::sigma_id(labels)] = apex[mask];
    kept.push_back(std::move(labels));
  }
  out.poset = detail::inclusion_poset(kept);
  return out;
}

/// Independent construction used as the oracle for overlap_poset: sweep a
/// grid over {(t, y) : |y| <= t <= horizon}, label every grid point with the
/// coins whose cones contain it, and keep the distinct labels. Realized
/// labels are maximal for their intersection by construction. Apexes are
/// reported as the earliest (then lowest-|y|) grid point per label.
inline OverlapPoset overlap_poset_bruteforce(const CoinConfig& cfg, double resolution) {
  cfg.check();
  if (!(resolution > 0)) throw DomainError("resolution-too-coarse", "resolution must be positive");
  if (!cfg.coins.empty() && resolution > cfg.min_spacing() / 10.0)
    throw DomainError("resolution-too-coarse",
                      "need at least 10 grid points per coin spacing (min spacing " +
                          std::to_string(cfg.min_spacing()) + ")");

  const std::size_t steps_t = static_cast<std::size_t>(std::floor(cfg.horizon / resolution)) + 1;
  std::vector<std::map<std::size_t, SpaceTimePoint>> per_row(steps_t);
  parallel_for(steps_t, [&](std::size_t it) {
    const double t = static_cast<double>(it) * resolution;
    if (t > cfg.horizon) return;
    const long ny = static_cast<long>(std::floor(t / resolution));
    for (long iy = -ny; iy <= ny; ++iy) {
      const SpaceTimePoint p{t, static_cast<double>(iy) * resolution};
      if (std::abs(p.y) > p.t) continue;
      std::size_t mask = 0;
      for (std::size_t k = 0; k < cfg.coins.size(); ++k)
        if (lightcone_leq(cfg.coins[k].at, p)) mask |= std::size_t{1} << k;
      auto it2 = per_row[it].find(mask);
      if (it2 == per_row[it].end() || p.y * p.y < it2->second.y * it2->second.y)
        per_row[it].insert_or_assign(mask, p);
    }
  });

  std::map<std::size_t, SpaceTimePoint> first_seen;
  for (const auto& row : per_row)
    for (const auto& [mask, p] : row)
      if (!first_seen.count(mask)) first_seen.emplace(mask, p);

  std::vector<std::set<std::string>> kept;
  OverlapPoset out;
  for (const auto& [mask, p] : first_seen) {
    std::set<std::string> labels;
    for (std::size_t k = 0; k < cfg.coins.size(); ++k)
      if (mask >> k & 1) labels.insert(cfg.coins[k].label);
    out.apexes[OverlapPoset::sigma_id(labels)] = p;
    kept.push_back(std::move(labels));
  }
  out.poset = detail::inclusion_poset(kept);
  return out;
}

/// Stratum label of a point: the coins whose cones contain it, plus S.
/// Always an element of the overlap poset, and monotone in the light-cone
/// order.
inline std::string strat_label(const CoinConfig& cfg, const SpaceTimePoint& p) {
  if (std::abs(p.y) > p.t || p.t > cfg.horizon)
    throw DomainError("point-outside-domain",
                      "(" + std::to_string(p.t) + ", " + std::to_string(p.y) + ")");
  std::set<std::string> labels;
  for (const auto& c : cfg.coins)
    if (lightcone_leq(c.at, p)) labels.insert(c.label);
  return OverlapPoset::sigma_id(labels);
}

} // namespace strat
