#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "strat/core/poset.hpp"
#include "strat/geom/shape.hpp"
#include "strat/stl/formula.hpp"
#include "strat/stl/robustness.hpp"
#include "strat/util/rng.hpp"

namespace strat {

/// A stratum with its maximal safe tube radius mu and the bounding box the
/// whole family lives in. mu is capped by the reach (when finite) and by the
/// clearance between the shape and the box boundary, so the tube of radius
/// mu deformation retracts onto the shape and stays inside the box.
struct StratumSpec {
  Shape shape;
  double mu = 0.0;
  Box bounds;

  /// Distance from the shape to the box boundary. Exact for these shapes:
  /// the per-coordinate gap is minimized at the shape's extremes.
  double clearance() const {
    const Box sb = shape.bounding_box();
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < bounds.lo.size(); ++i) {
      best = std::min(best, sb.lo[i] - bounds.lo[i]);
      best = std::min(best, bounds.hi[i] - sb.hi[i]);
    }
    return best;
  }

  void check() const {
    bounds.check();
    if (shape.dim() != bounds.lo.size())
      throw DomainError("invalid-spec", "shape and bounding box dimensions differ");
    const double clear = clearance();
    if (clear < 0) throw DomainError("invalid-spec", "shape leaves the bounding box");
    if (!(mu > 0)) throw DomainError("invalid-spec", "mu must be positive");
    if (mu > clear + 1e-12)
      throw DomainError("invalid-spec", "mu exceeds the clearance to the box boundary");
    double rch = std::numeric_limits<double>::infinity();
    try {
      rch = shape.reach();
    } catch (const DomainError&) {
      // unions have no analytic reach; only the clearance cap applies
    }
    if (std::isfinite(rch) && mu > rch + 1e-12)
      throw DomainError("invalid-spec", "mu exceeds the reach");
  }

  /// Largest admissible mu: min(reach, clearance).
  double max_mu() const {
    double rch = std::numeric_limits<double>::infinity();
    try {
      rch = shape.reach();
    } catch (const DomainError&) {
    }
    return std::min(rch, clearance());
  }
};

/// Registers the stratum's distance function as `d_<id>` and returns the
/// close-to atom  d(S, x) <= mu. Its robustness at x is mu - d(S, x),
/// maximal on the stratum itself.
inline FormulaPtr close_to(FunctionRegistry& reg, const std::string& id,
                           const StratumSpec& spec) {
  spec.check();
  reg.add("d_" + id, [shape = spec.shape](const Eigen::VectorXd& x) { return shape.dist(x); });
  return Formula::atom("d_" + id, Comparator::Le, spec.mu);
}

/// The dual away-from atom  d(S, x) >= 0; its robustness is exactly the
/// distance, never negative and zero on the stratum.
inline FormulaPtr away_from(FunctionRegistry& reg, const std::string& id,
                            const StratumSpec& spec) {
  spec.check();
  reg.add("d_" + id, [shape = spec.shape](const Eigen::VectorXd& x) { return shape.dist(x); });
  return Formula::atom("d_" + id, Comparator::Ge, 0.0);
}

/// Strata plus their frontier poset: lower strata lie in the closure of the
/// ones above them.
struct StratifiedFamily {
  std::map<std::string, StratumSpec> strata;
  Poset frontier;

  void check() const {
    for (const auto& [id, spec] : strata) {
      if (!frontier.contains(id))
        throw DomainError("invalid-spec", "stratum '" + id + "' missing from frontier poset");
      spec.check();
    }
    for (const auto& id : frontier.elements())
      if (!strata.count(id))
        throw DomainError("unknown-stratum", "frontier names unknown stratum '" + id + "'");
  }

  std::vector<std::string> strictly_below(const std::string& id) const {
    std::vector<std::string> out;
    for (const auto& other : frontier.elements())
      if (other != id && frontier.leq(other, id)) out.push_back(other);
    return out;
  }
};

/// Samples points on each lower stratum and confirms they lie in the
/// closure of every stratum above it (the axiom of the frontier, here
/// checked on the shapes as given).
inline bool frontier_axiom_check(const StratifiedFamily& fam, std::size_t samples_per_pair = 200,
                                 std::uint64_t seed = 0, double tol = 1e-9) {
  fam.check();
  Rng rng(seed);
  for (const auto& [upper_id, upper] : fam.strata)
    for (const auto& lower_id : fam.strictly_below(upper_id)) {
      const Shape& lower = fam.strata.at(lower_id).shape;
      for (std::size_t k = 0; k < samples_per_pair; ++k)
        if (upper.shape.dist(lower.sample(rng)) > tol) return false;
    }
  return true;
}

struct StratumDecision {
  bool member = false;
  double robustness = 0.0;
};

/// Membership in stratum i via the close-to-i predicate conjoined with
/// away-from every frontier stratum strictly below i. Positive robustness
/// means x sits in i's tube but off the lower strata.
inline StratumDecision decide_stratum(const StratifiedFamily& fam, const std::string& id,
                                      const Eigen::VectorXd& x) {
  auto it = fam.strata.find(id);
  if (it == fam.strata.end()) throw DomainError("unknown-stratum", "'" + id + "'");
  const StratumSpec& spec = it->second;
  double rob = spec.mu - spec.shape.dist(x);
  for (const auto& below : fam.strictly_below(id))
    rob = std::min(rob, fam.strata.at(below).shape.dist(x));
  return {rob > 0.0, rob};
}

/// Resolves the overlap left by the zero-threshold away-from predicates:
/// near a lower stratum both its own test and the upper one fire, and the
/// lower stratum wins. Returns the frontier-minimal stratum whose decision
/// is positive, or nothing (outside every tube, or ambiguous).
inline std::optional<std::string> assign_stratum(const StratifiedFamily& fam,
                                                 const Eigen::VectorXd& x) {
  std::vector<std::string> firing;
  for (const auto& [id, spec] : fam.strata)
    if (decide_stratum(fam, id, x).member) firing.push_back(id);
  if (firing.empty()) return std::nullopt;
  for (const auto& cand : firing) {
    bool minimal = true;
    for (const auto& other : firing)
      if (other != cand && !fam.frontier.leq(cand, other)) minimal = false;
    if (minimal) return cand;
  }
  return std::nullopt; // incomparable candidates; no canonical owner
}

struct PredicatePosetCheck {
  bool ok = true;
  std::optional<Eigen::VectorXd> witness;
  std::string lower, upper; // violated relation, when any
};

/// Samples the close-to regions and verifies their inclusion order runs
/// against the frontier: whenever j < i, the tube of S_j must sit inside
/// the tube of S_i. Density is in samples per unit volume of the sampled
/// tube's bounding box (at least 1000 per relation).
inline PredicatePosetCheck predicate_poset_check(const StratifiedFamily& fam,
                                                 double density = 1000.0,
                                                 std::uint64_t seed = 0) {
  fam.check();
  Rng rng(seed);
  PredicatePosetCheck out;
  for (const auto& [upper_id, upper] : fam.strata) {
    for (const auto& lower_id : fam.strictly_below(upper_id)) {
      const StratumSpec& lower = fam.strata.at(lower_id);
      Box sample_box = lower.shape.bounding_box();
      double volume = 1.0;
      for (Eigen::Index i = 0; i < sample_box.lo.size(); ++i) {
        sample_box.lo[i] -= lower.mu;
        sample_box.hi[i] += lower.mu;
        volume *= sample_box.hi[i] - sample_box.lo[i];
      }
      const std::size_t n =
          std::max<std::size_t>(1000, static_cast<std::size_t>(density * volume));
      Eigen::VectorXd x(sample_box.lo.size());
      for (std::size_t k = 0; k < n; ++k) {
        for (Eigen::Index i = 0; i < x.size(); ++i)
          x[i] = rng.uniform(sample_box.lo[i], sample_box.hi[i]);
        if (lower.shape.dist(x) > lower.mu) continue;
        if (upper.shape.dist(x) > upper.mu + 1e-9) {
          out.ok = false;
          out.witness = x;
          out.lower = lower_id;
          out.upper = upper_id;
          return out;
        }
      }
    }
  }
  return out;
}

} // namespace strat
