#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "strat/core/poset.hpp"

namespace strat {

/// Chains of a poset ordered by reverse inclusion, with the empty chain
/// maximal; passing through nothing is the generic stratum, longer chains
/// sit deeper.
struct OrderComplex {
  Poset base;
  std::vector<std::vector<std::string>> chains; // includes the empty chain

  /// Chain id used as a poset element: "()" for empty, "(a<b<c)" otherwise.
  static std::string chain_id(const std::vector<std::string>& chain) {
    std::string out = "(";
    for (std::size_t i = 0; i < chain.size(); ++i) {
      if (i) out += "<";
      out += chain[i];
    }
    return out + ")";
  }

  /// The complex as a poset: covers are one-step chain extensions reversed,
  /// so dropping one element of a chain moves up.
  Poset as_poset() const {
    std::vector<std::string> elements;
    elements.reserve(chains.size());
    for (const auto& c : chains) elements.push_back(chain_id(c));

    std::vector<std::pair<std::string, std::string>> covers;
    for (const auto& c : chains) {
      if (c.empty()) continue;
      for (std::size_t drop = 0; drop < c.size(); ++drop) {
        std::vector<std::string> sub;
        for (std::size_t i = 0; i < c.size(); ++i)
          if (i != drop) sub.push_back(c[i]);
        if (std::find(chains.begin(), chains.end(), sub) != chains.end())
          covers.emplace_back(chain_id(c), chain_id(sub));
      }
    }
    return Poset(std::move(elements), std::move(covers));
  }
};

/// All strictly increasing chains of p with length (element count) up to
/// max_len, plus the empty chain. The full complex of a large poset explodes
/// combinatorially, hence the cap.
inline OrderComplex order_complex(const Poset& p, std::size_t max_len) {
  OrderComplex out;
  out.base = p;
  out.chains.push_back({}); // empty chain, the maximum

  std::vector<std::vector<std::size_t>> frontier;
  const std::size_t n = p.size();
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<std::size_t>> next;
    if (len == 1) {
      for (std::size_t i = 0; i < n; ++i) next.push_back({i});
    } else {
      for (const auto& chain : frontier)
        for (std::size_t i = 0; i < n; ++i)
          if (i != chain.back() && p.leq_index(chain.back(), i) && !p.leq_index(i, chain.back()))
            // strict extension; antisymmetry of a valid poset makes the
            // second test redundant but keeps garbage inputs from looping
            [&] {
              auto ext = chain;
              ext.push_back(i);
              next.push_back(std::move(ext));
            }();
    }
    for (const auto& chain : next) {
      std::vector<std::string> named;
      for (std::size_t i : chain) named.push_back(p.elements()[i]);
      out.chains.push_back(std::move(named));
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return out;
}

} // namespace strat
