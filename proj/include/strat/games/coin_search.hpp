#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "strat/games/overlap.hpp"
#include "strat/games/spacetime.hpp"
#include "strat/util/rng.hpp"

namespace strat {

/// Constraints the shipped five-coin layout has to satisfy. Coordinates are
/// searched, not copied: the source material fixes the qualitative facts
/// (eleven overlap strata counting the start, a collectible A-then-C run,
/// the probe point (4.5, 1) above both A and B, never three coins on one
/// admissible trajectory) but no numbers.
struct CoinSearchSpec {
  double horizon = 5.0;
  SpaceTimePoint probe{4.5, 1.0};
  std::size_t overlap_size = 11;
  double grid = 0.25;         // candidate coordinates are multiples of this
  double margin = 0.125;      // slack kept on every comparability decision
  double horizon_margin = 0.1;
  double min_spacing = 0.5;
  double min_time_gap = 0.25; // coins appear at five different instants
};

inline bool coin_config_admissible(const CoinConfig& cfg, const CoinSearchSpec& spec) {
  const std::size_t n = cfg.coins.size();
  if (n != 5) return false;
  try {
    cfg.check();
  } catch (const DomainError&) {
    return false;
  }
  if (cfg.min_spacing() < spec.min_spacing) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(cfg.coins[i].at.t - cfg.coins[j].at.t) < spec.min_time_gap) return false;

  // comparability with margins: A < C is the only related pair, which also
  // caps jointly collectible coins at two (no chain of three exists)
  auto slack = [](const SpaceTimePoint& lo, const SpaceTimePoint& hi) {
    return (hi.t - lo.t) - std::abs(hi.y - lo.y); // >= 0 iff lo <= hi
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const bool want = cfg.coins[i].label == "A" && cfg.coins[j].label == "C";
      const double s = slack(cfg.coins[i].at, cfg.coins[j].at);
      if (want && s < spec.margin) return false;
      if (!want && s > -spec.margin && cfg.coins[j].at.t >= cfg.coins[i].at.t) return false;
    }

  // the probe collects A and B
  for (const auto& c : cfg.coins)
    if (c.label == "A" || c.label == "B")
      if (slack(c.at, spec.probe) < spec.margin) return false;

  // all subset apexes keep clear of the horizon line so a finite-resolution
  // sweep realizes exactly the same strata
  const std::size_t total = std::size_t{1} << n;
  std::vector<SpaceTimePoint> apex(total, {0.0, 0.0});
  for (std::size_t mask = 1; mask < total; ++mask) {
    const std::size_t low = mask & (mask - 1);
    std::size_t idx = 0;
    while (!((mask ^ low) >> idx & 1)) ++idx;
    apex[mask] = (low == 0) ? cfg.coins[idx].at : cone_join(apex[low], cfg.coins[idx].at);
    if (std::abs(apex[mask].t - cfg.horizon) < spec.horizon_margin) return false;
  }

  return overlap_poset(cfg).poset.size() == spec.overlap_size;
}

/// Randomized dyadic-grid search. Returns the first admissible layout, also
/// cross-checked against the brute-force sweep at min spacing / 20.
inline std::optional<CoinConfig> search_coin_config(std::uint64_t seed,
                                                    std::size_t max_attempts,
                                                    const CoinSearchSpec& spec = {}) {
  Rng rng(seed);
  const auto snap = [&](double v) { return std::round(v / spec.grid) * spec.grid; };
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    CoinConfig cfg;
    cfg.horizon = spec.horizon;
    const char* labels[5] = {"A", "B", "C", "D", "E"};
    for (int i = 0; i < 5; ++i) {
      double t = snap(rng.uniform(0.5, spec.horizon - 0.5));
      double y = snap(rng.uniform(-t, t));
      y = std::clamp(y, -t, t);
      cfg.coins.push_back({labels[i], {t, y}});
    }
    if (!coin_config_admissible(cfg, spec)) continue;
    const OverlapPoset fast = overlap_poset(cfg);
    const OverlapPoset slow = overlap_poset_bruteforce(cfg, cfg.min_spacing() / 20.0);
    std::set<std::string> ef(fast.poset.elements().begin(), fast.poset.elements().end());
    std::set<std::string> es(slow.poset.elements().begin(), slow.poset.elements().end());
    if (ef != es) continue;
    return cfg;
  }
  return std::nullopt;
}

} // namespace strat
