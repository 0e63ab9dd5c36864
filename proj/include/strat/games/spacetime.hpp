#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "strat/util/error.hpp"

namespace strat {

/// Point of the coin game's space-time: t is time, y is position. A unit
/// speed bound makes the reachable set of a point its future light-cone.
struct SpaceTimePoint {
  double t = 0.0;
  double y = 0.0;
};

/// p <= q iff q lies in the future cone of p: t_p <= t_q and |y_q - y_p| <= t_q - t_p.
inline bool lightcone_leq(const SpaceTimePoint& p, const SpaceTimePoint& q) {
  return p.t <= q.t && std::abs(q.y - p.y) <= q.t - p.t;
}

/// Least r with p <= r and q <= r. For incomparable points the apex sits on
/// the crossing of p's and q's cone boundaries:
///   t* = (t_p + t_q + |y_p - y_q|) / 2
///   y* = (y_p + y_q) / 2 + sign(y_q - y_p) * (t_q - t_p) / 2
/// and both cone constraints hold with equality there.
inline SpaceTimePoint cone_join(const SpaceTimePoint& p, const SpaceTimePoint& q) {
  if (lightcone_leq(p, q)) return q;
  if (lightcone_leq(q, p)) return p;
  const double s = (q.y > p.y) ? 1.0 : -1.0; // incomparable implies y_p != y_q
  SpaceTimePoint r;
  r.t = 0.5 * (p.t + q.t + std::abs(p.y - q.y));
  r.y = 0.5 * (p.y + q.y) + 0.5 * s * (q.t - p.t);
  // dyadic inputs land here exactly; for general doubles the rounded apex
  // can sit an ulp below a boundary, so nudge until containment holds
  for (int guard = 0; guard < 64 && !(lightcone_leq(p, r) && lightcone_leq(q, r)); ++guard)
    r.t = std::nextafter(r.t, std::numeric_limits<double>::infinity());
  return r;
}

struct Coin {
  std::string label;
  SpaceTimePoint at;
};

/// Coin layout plus the time horizon that bounds the playable frame. Without
/// a horizon every pair of future cones eventually intersects and the
/// overlap structure degenerates.
struct CoinConfig {
  std::vector<Coin> coins;
  double horizon = 0.0;

  void check() const {
    if (!(horizon > 0)) throw DomainError("config-invalid", "horizon must be positive");
    std::vector<std::string> labels;
    for (const auto& c : coins) {
      if (c.label.empty() || c.label == "S")
        throw DomainError("config-invalid", "coin labels must be nonempty and not 'S'");
      if (std::count(labels.begin(), labels.end(), c.label))
        throw DomainError("config-invalid", "duplicate label '" + c.label + "'");
      labels.push_back(c.label);
      if (!(c.at.t > 0) || !(c.at.t < horizon))
        throw DomainError("config-invalid", "coin '" + c.label + "' must have 0 < t < horizon");
      if (std::abs(c.at.y) > c.at.t)
        throw DomainError("config-invalid", "coin '" + c.label + "' outside the start cone");
    }
  }

  /// Minimum pairwise Euclidean distance between coins (and the start).
  double min_spacing() const {
    double best = std::numeric_limits<double>::infinity();
    std::vector<SpaceTimePoint> pts{{0.0, 0.0}};
    for (const auto& c : coins) pts.push_back(c.at);
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        best = std::min(best, std::hypot(pts[i].t - pts[j].t, pts[i].y - pts[j].y));
    return best;
  }
};

inline void to_json(nlohmann::json& j, const CoinConfig& cfg) {
  j = nlohmann::json{{"coins", nlohmann::json::array()}, {"horizon", cfg.horizon}};
  for (const auto& c : cfg.coins)
    j["coins"].push_back({{"label", c.label}, {"t", c.at.t}, {"y", c.at.y}});
}

inline void from_json(const nlohmann::json& j, CoinConfig& cfg) {
  cfg.coins.clear();
  for (const auto& c : j.at("coins"))
    cfg.coins.push_back({c.at("label").get<std::string>(),
                         {c.at("t").get<double>(), c.at("y").get<double>()}});
  cfg.horizon = j.at("horizon").get<double>();
  cfg.check();
}

} // namespace strat
