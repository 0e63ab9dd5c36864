#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "strat/core/grid_complex.hpp"
#include "strat/core/poset.hpp"
#include "strat/util/error.hpp"

namespace strat {

/// Grid moves for the no-rotation game. None holds position.
enum class Move { None, Up, Down, Left, Right };

inline const char* to_string(Move m) {
  switch (m) {
    case Move::None: return "None";
    case Move::Up: return "Up";
    case Move::Down: return "Down";
    case Move::Left: return "Left";
    case Move::Right: return "Right";
  }
  return "?";
}

inline Move move_from_string(const std::string& s) {
  for (Move m : {Move::None, Move::Up, Move::Down, Move::Left, Move::Right})
    if (s == to_string(m)) return m;
  throw DomainError("bad-action", "'" + s + "'");
}

/// Spanning tree of grid faces rooted at the goal face, which is the poset
/// minimum; cell_map sends each face id to its tree element.
struct PolicyTree {
  Poset tree;
  std::map<std::string, std::string> cell_map;
  std::string goal_face;
};

namespace detail {

/// One flow step of a face policy, with walls clipping moves.
inline std::pair<int, int> flow_step(const GridComplex& g, int r, int c, Move m) {
  int nr = r, nc = c;
  switch (m) {
    case Move::Up: nr = r - 1; break;
    case Move::Down: nr = r + 1; break;
    case Move::Left: nc = c - 1; break;
    case Move::Right: nc = c + 1; break;
    case Move::None: break;
  }
  if (nr < 0 || nr >= g.rows || nc < 0 || nc >= g.cols) return {r, c};
  return {nr, nc};
}

} // namespace detail

/// Builds the policy tree of a face policy whose flow reaches a single goal
/// face from everywhere. Fails with a witness when the flow has a cycle or a
/// face that never reaches the goal.
inline PolicyTree policy_tree(const GridComplex& g,
                              const std::map<std::string, Move>& policy) {
  std::map<std::string, std::string> next;
  std::vector<std::string> fixed;
  for (int r = 0; r < g.rows; ++r)
    for (int c = 0; c < g.cols; ++c) {
      const std::string id = GridComplex::face_id(r, c);
      auto it = policy.find(id);
      if (it == policy.end()) throw DomainError("partial-assignment", "no action for " + id);
      auto [nr, nc] = detail::flow_step(g, r, c, it->second);
      next[id] = GridComplex::face_id(nr, nc);
      if (next[id] == id) fixed.push_back(id);
    }
  if (fixed.size() != 1)
    throw DomainError("not-a-spanning-tree",
                      fixed.empty() ? "flow has no fixed point (cycle somewhere)"
                                    : "multiple fixed points: " + fixed[0] + ", " + fixed[1]);
  const std::string goal = fixed[0];

  // walk each face toward the goal, reporting the first cycle found
  std::vector<std::pair<std::string, std::string>> covers;
  std::set<std::string> settled{goal};
  for (const auto& [start, unused] : next) {
    (void)unused;
    std::vector<std::string> path{start};
    std::set<std::string> on_path{start};
    std::string cur = start;
    while (!settled.count(cur)) {
      const std::string& nxt = next.at(cur);
      if (on_path.count(nxt)) {
        std::string witness;
        for (const auto& p : path) witness += p + " -> ";
        throw DomainError("not-a-spanning-tree", "cycle: " + witness + nxt);
      }
      path.push_back(nxt);
      on_path.insert(nxt);
      cur = nxt;
    }
    for (const auto& p : path) settled.insert(p);
  }

  for (const auto& [face, nxt] : next)
    if (face != goal) covers.emplace_back(nxt, face); // parent (closer to goal) is lower

  PolicyTree out;
  out.goal_face = goal;
  out.tree = Poset(g.faces(), covers);
  for (const auto& f : g.faces()) out.cell_map[f] = f;
  return out;
}

/// The tree stratification of a digitized grid: faces go to their policy
/// tree node, lower cells to the meet of the faces above them. The result
/// is a monotone map from the face poset to the tree, hence continuous for
/// the Alexandrov topologies.
inline MonotoneMap grid_policy_stratification(const GridComplex& g,
                                              const std::map<std::string, Move>& policy) {
  const PolicyTree pt = policy_tree(g, policy);
  MonotoneMap m;
  m.source = g.face_poset();
  m.target = pt.tree;
  for (const auto& cell : m.source.elements()) {
    const auto above = g.faces_above(cell);
    std::set<std::string> nodes;
    for (const auto& f : above) nodes.insert(pt.cell_map.at(f));
    m.assignment[cell] = pt.tree.tree_meet(nodes);
  }
  return m;
}

} // namespace strat
