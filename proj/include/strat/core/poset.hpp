#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "strat/util/error.hpp"

namespace strat {

/// Finite poset stored by its Hasse covers. Reachability is answered from a
/// precomputed transitive-closure bitset per element, which keeps order
/// queries exact and makes exhaustive monotonicity checks cheap at the
/// element counts this library works with.
///
/// Element ids are opaque strings with structural equality; elements coming
/// from cells, label subsets, or chains all share this one carrier type.
class Poset {
public:
  Poset() = default;

  /// Builds from element ids and cover pairs (lower, upper). The cover list
  /// is taken as given; call validate() to check acyclicity and irredundancy.
  Poset(std::vector<std::string> elements,
        std::vector<std::pair<std::string, std::string>> covers)
      : elements_(std::move(elements)), covers_(std::move(covers)) {
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (!index_.emplace(elements_[i], i).second)
        throw DomainError("duplicate-element", "'" + elements_[i] + "' listed twice");
    }
    for (const auto& [lo, hi] : covers_) {
      index_of(lo);
      index_of(hi);
    }
    build_closure();
  }

  const std::vector<std::string>& elements() const { return elements_; }
  const std::vector<std::pair<std::string, std::string>>& covers() const { return covers_; }
  std::size_t size() const { return elements_.size(); }

  bool contains(const std::string& id) const { return index_.count(id) != 0; }

  std::size_t index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw DomainError("unknown-element", "'" + id + "'");
    return it->second;
  }

  /// x <= y in the order generated by the covers (reflexive).
  bool leq(const std::string& x, const std::string& y) const {
    return leq_index(index_of(x), index_of(y));
  }

  bool leq_index(std::size_t xi, std::size_t yi) const {
    if (xi == yi) return true;
    return closure_bit(yi, xi); // below_[y] holds everything <= y
  }

  struct Violation {
    std::string kind;                // "cycle-detected" | "redundant-cover"
    std::vector<std::string> where;  // offending cycle or cover edge
  };

  /// Confirms the Hasse invariants: no directed cycle among covers and no
  /// cover edge implied by a longer path. Returns the first violation found.
  std::optional<Violation> validate() const {
    if (auto cyc = find_cycle()) return Violation{"cycle-detected", *cyc};
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& c : covers_)
      if (!seen.insert(c).second) return Violation{"redundant-cover", {c.first, c.second}};
    // a cover (a,b) is redundant iff b is reachable from a by a path of
    // length >= 2 through the remaining covers
    for (const auto& [lo, hi] : covers_) {
      const std::size_t a = index_of(lo), b = index_of(hi);
      for (const auto& [mlo, mhi] : covers_) {
        if (mlo == lo && mhi == hi) continue;
        const std::size_t m = index_of(mhi);
        if (index_of(mlo) == a && m != b && leq_index(m, b))
          return Violation{"redundant-cover", {lo, hi}};
      }
    }
    return std::nullopt;
  }

  /// Down-set generated by S: all x with x <= y for some y in S. These are
  /// exactly the closed sets of the Alexandrov topology used throughout.
  std::set<std::string> down_set(const std::set<std::string>& seed) const {
    std::set<std::string> out;
    for (const auto& id : seed) {
      const std::size_t yi = index_of(id);
      for (std::size_t xi = 0; xi < elements_.size(); ++xi)
        if (leq_index(xi, yi)) out.insert(elements_[xi]);
    }
    return out;
  }

  std::set<std::string> up_set(const std::set<std::string>& seed) const {
    std::set<std::string> out;
    for (const auto& id : seed) {
      const std::size_t xi = index_of(id);
      for (std::size_t yi = 0; yi < elements_.size(); ++yi)
        if (leq_index(xi, yi)) out.insert(elements_[yi]);
    }
    return out;
  }

  /// Enumerates all down-sets (exponential; guarded for exhaustive checks on
  /// small posets only).
  std::vector<std::set<std::string>> all_down_sets(std::size_t max_elements = 12) const {
    if (elements_.size() > max_elements)
      throw DomainError("poset-too-large", "down-set enumeration capped at " +
                                               std::to_string(max_elements) + " elements");
    std::vector<std::set<std::string>> out;
    const std::size_t n = elements_.size();
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
      bool closed = true;
      for (std::size_t y = 0; y < n && closed; ++y) {
        if (!(mask >> y & 1)) continue;
        for (std::size_t x = 0; x < n && closed; ++x)
          if (leq_index(x, y) && !(mask >> x & 1)) closed = false;
      }
      if (!closed) continue;
      std::set<std::string> d;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) d.insert(elements_[i]);
      out.push_back(std::move(d));
    }
    return out;
  }

  std::vector<std::string> minimal_elements() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      bool minimal = true;
      for (const auto& [lo, hi] : covers_)
        if (index_of(hi) == i) { minimal = false; break; }
      if (minimal) out.push_back(elements_[i]);
    }
    return out;
  }

  /// Greatest lower bound in a tree poset rooted at its unique minimum,
  /// i.e. the deepest common ancestor of S.
  std::string tree_meet(const std::set<std::string>& members) const {
    if (members.empty()) throw DomainError("empty-set", "tree_meet of empty set");
    require_tree();
    // root path of the first member, then intersect with the others
    std::vector<std::size_t> path = root_path(index_of(*members.begin()));
    for (auto it = std::next(members.begin()); it != members.end(); ++it) {
      const std::vector<std::size_t> other = root_path(index_of(*it));
      std::size_t keep = 0;
      while (keep < path.size() && keep < other.size() && path[keep] == other[keep]) ++keep;
      path.resize(keep);
    }
    // paths share at least the root
    return elements_[path.back()];
  }

  bool is_tree() const {
    try {
      require_tree();
      return true;
    } catch (const DomainError&) {
      return false;
    }
  }

private:
  std::vector<std::string> elements_;
  std::vector<std::pair<std::string, std::string>> covers_;
  std::map<std::string, std::size_t> index_;
  // below_[y] bitset: below_[y] has bit x set iff x <= y (strictly or equal)
  std::vector<std::vector<std::uint64_t>> below_;
  std::size_t words_ = 0;

  bool closure_bit(std::size_t y, std::size_t x) const {
    return (below_[y][x >> 6] >> (x & 63)) & 1;
  }

  void build_closure() {
    const std::size_t n = elements_.size();
    words_ = (n + 63) / 64;
    below_.assign(n, std::vector<std::uint64_t>(words_, 0));
    for (std::size_t i = 0; i < n; ++i) below_[i][i >> 6] |= 1ULL << (i & 63);

    std::vector<std::vector<std::size_t>> children(n); // cover lowers per upper
    std::vector<std::vector<std::size_t>> ups(n);
    std::vector<std::size_t> indeg(n, 0);
    for (const auto& [lo, hi] : covers_) {
      const std::size_t a = index_.at(lo), b = index_.at(hi);
      children[b].push_back(a);
      ups[a].push_back(b);
      ++indeg[b];
    }
    // topological pass; on a cycle some nodes never settle, which is fine:
    // validate() reports the cycle, and closure stays a sound partial answer
    std::vector<std::size_t> queue;
    for (std::size_t i = 0; i < n; ++i)
      if (indeg[i] == 0) queue.push_back(i);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const std::size_t v = queue[qi];
      for (std::size_t c : children[v])
        for (std::size_t w = 0; w < words_; ++w) below_[v][w] |= below_[c][w];
      for (std::size_t u : ups[v])
        if (--indeg[u] == 0) queue.push_back(u);
    }
  }

  std::optional<std::vector<std::string>> find_cycle() const {
    const std::size_t n = elements_.size();
    std::vector<std::vector<std::size_t>> next(n);
    for (const auto& [lo, hi] : covers_) next[index_.at(lo)].push_back(index_.at(hi));
    std::vector<int> state(n, 0); // 0 unseen, 1 on stack, 2 done
    std::vector<std::size_t> stack;
    // iterative DFS keeping the current path for the report
    for (std::size_t s = 0; s < n; ++s) {
      if (state[s] != 0) continue;
      std::vector<std::pair<std::size_t, std::size_t>> frames{{s, 0}};
      state[s] = 1;
      stack = {s};
      while (!frames.empty()) {
        auto& [v, ei] = frames.back();
        if (ei < next[v].size()) {
          const std::size_t w = next[v][ei++];
          if (state[w] == 1) {
            std::vector<std::string> cycle;
            auto it = std::find(stack.begin(), stack.end(), w);
            for (; it != stack.end(); ++it) cycle.push_back(elements_[*it]);
            cycle.push_back(elements_[w]);
            return cycle;
          }
          if (state[w] == 0) {
            state[w] = 1;
            stack.push_back(w);
            frames.emplace_back(w, 0);
          }
        } else {
          state[v] = 2;
          stack.pop_back();
          frames.pop_back();
        }
      }
    }
    return std::nullopt;
  }

  void require_tree() const {
    // tree poset rooted at its minimum: every non-root element covers
    // exactly one parent and the root reaches everything
    const std::size_t n = elements_.size();
    if (n == 0) throw DomainError("not-a-tree", "empty poset");
    std::vector<int> parents(n, 0);
    for (const auto& [lo, hi] : covers_) {
      (void)lo;
      ++parents[index_.at(hi)];
    }
    std::size_t roots = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (parents[i] == 0)
        ++roots;
      else if (parents[i] > 1)
        throw DomainError("not-a-tree", "'" + elements_[i] + "' covers two parents");
    }
    if (roots != 1) throw DomainError("not-a-tree", std::to_string(roots) + " minimal elements");
  }

  std::vector<std::size_t> root_path(std::size_t leaf) const {
    // unique parent chain; require_tree() has been checked by callers
    std::vector<std::size_t> rev{leaf};
    std::size_t cur = leaf;
    for (;;) {
      bool found = false;
      for (const auto& [lo, hi] : covers_) {
        if (index_.at(hi) == cur) {
          cur = index_.at(lo);
          rev.push_back(cur);
          found = true;
          break;
        }
      }
      if (!found) break;
    }
    return {rev.rbegin(), rev.rend()};
  }
};

/// Total assignment between posets; monotone iff it is continuous when both
/// sides carry the Alexandrov topology with down-sets closed.
struct MonotoneMap {
  Poset source;
  Poset target;
  std::map<std::string, std::string> assignment;

  struct Check {
    bool ok = true;
    // first violated relation, as (x, y) with x <= y but f(x) !<= f(y)
    std::optional<std::pair<std::string, std::string>> witness;
  };

  Check check() const {
    for (const auto& id : source.elements())
      if (!assignment.count(id))
        throw DomainError("partial-assignment", "no image for '" + id + "'");
    // checking cover relations suffices, but the witness contract names any
    // violated relation, so scan the full order
    for (const auto& x : source.elements()) {
      for (const auto& y : source.elements()) {
        if (!source.leq(x, y)) continue;
        if (!target.leq(assignment.at(x), assignment.at(y)))
          return {false, std::make_pair(x, y)};
      }
    }
    return {};
  }
};

inline bool is_monotone(const MonotoneMap& m) { return m.check().ok; }

/// Removes transitively implied edges; handy when building posets from raw
/// relation lists.
inline std::vector<std::pair<std::string, std::string>> transitive_reduction(
    const std::vector<std::string>& elements,
    const std::vector<std::pair<std::string, std::string>>& relations) {
  Poset full(elements, relations);
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [lo, hi] : relations) {
    if (lo == hi) continue;
    bool implied = false;
    for (const auto& mid : elements) {
      if (mid == lo || mid == hi) continue;
      if (full.leq(lo, mid) && full.leq(mid, hi)) { implied = true; break; }
    }
    if (!implied && !std::count(out.begin(), out.end(), std::make_pair(lo, hi)))
      out.emplace_back(lo, hi);
  }
  return out;
}

// exchange format: {"elements": [string], "covers": [[lo, hi]]}
inline void to_json(nlohmann::json& j, const Poset& p) {
  j = nlohmann::json{{"elements", p.elements()}, {"covers", nlohmann::json::array()}};
  for (const auto& [lo, hi] : p.covers()) j["covers"].push_back({lo, hi});
}

inline void from_json(const nlohmann::json& j, Poset& p) {
  std::vector<std::string> elements = j.at("elements").get<std::vector<std::string>>();
  std::vector<std::pair<std::string, std::string>> covers;
  for (const auto& edge : j.at("covers")) {
    if (!edge.is_array() || edge.size() != 2)
      throw DomainError("bad-poset-json", "each cover must be a [lo, hi] pair");
    covers.emplace_back(edge[0].get<std::string>(), edge[1].get<std::string>());
  }
  p = Poset(std::move(elements), std::move(covers));
}

/// One node per element, one edge per cover.
inline void write_dot(std::ostream& out, const Poset& p, const std::string& name = "poset") {
  out << "digraph \"" << name << "\" {\n  rankdir=BT;\n";
  for (const auto& e : p.elements()) out << "  \"" << e << "\";\n";
  for (const auto& [lo, hi] : p.covers()) out << "  \"" << lo << "\" -> \"" << hi << "\";\n";
  out << "}\n";
}

} // namespace strat
