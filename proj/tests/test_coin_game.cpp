#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "strat/games/overlap.hpp"
#include "strat/games/policy_strat.hpp"
#include "strat/games/spacetime.hpp"
#include "strat/games/trajectory.hpp"
#include "strat/util/rng.hpp"

using namespace strat;

namespace {

SpaceTimePoint rand_cone_point(Rng& rng, double t_max) {
  const double t = rng.uniform(0.0, t_max);
  return {t, rng.uniform(-t, t)};
}

bool posets_equal(const Poset& a, const Poset& b) {
  std::set<std::string> ea(a.elements().begin(), a.elements().end());
  std::set<std::string> eb(b.elements().begin(), b.elements().end());
  if (ea != eb) return false;
  std::set<std::pair<std::string, std::string>> ca(a.covers().begin(), a.covers().end());
  std::set<std::pair<std::string, std::string>> cb(b.covers().begin(), b.covers().end());
  return ca == cb;
}

CoinConfig random_config(Rng& rng, int n_coins, double horizon) {
  // rejection keeps coins separated and joins away from the horizon line so
  // the finite-resolution oracle sees every stratum
  for (;;) {
    CoinConfig cfg;
    cfg.horizon = horizon;
    for (int i = 0; i < n_coins; ++i) {
      SpaceTimePoint p = rand_cone_point(rng, horizon * 0.7);
      p.t = std::max(p.t, 0.3);
      p.y = std::clamp(p.y, -p.t, p.t);
      cfg.coins.push_back({std::string(1, static_cast<char>('A' + i)), p});
    }
    if (cfg.min_spacing() < 0.5) continue;
    bool margins_ok = true;
    const std::size_t total = std::size_t{1} << n_coins;
    for (std::size_t mask = 1; mask < total && margins_ok; ++mask) {
      SpaceTimePoint apex{0, 0};
      bool first = true;
      for (int k = 0; k < n_coins; ++k)
        if (mask >> k & 1) {
          apex = first ? cfg.coins[k].at : cone_join(apex, cfg.coins[k].at);
          first = false;
        }
      if (std::abs(apex.t - horizon) < 0.15) margins_ok = false;
      // coin pairs sitting almost on each other's cone boundary make the
      // realized region a sliver; keep a comparability margin instead
      for (int k = 0; k < n_coins; ++k) {
        if (mask != (std::size_t{1} << k)) continue;
        for (int j = 0; j < n_coins; ++j) {
          if (j == k) continue;
          const double slack = (cfg.coins[j].at.t - apex.t) - std::abs(cfg.coins[j].at.y - apex.y);
          if (std::abs(slack) < 0.1) margins_ok = false;
        }
      }
    }
    if (margins_ok) return cfg;
  }
}

} // namespace

TEST_CASE("lightcone order basics") {
  CHECK(lightcone_leq({1, 0}, {2, 1}));        // on the cone boundary
  CHECK_FALSE(lightcone_leq({1, 0}, {2, 1.5})); // outside
  CHECK(lightcone_leq({0, 0}, {4.5, 1}));      // reachable from the start
  CHECK_FALSE(lightcone_leq({2, 1}, {1, 0}));  // time must not decrease
}

TEST_CASE("cone join of symmetric incomparable points") {
  const SpaceTimePoint r = cone_join({1, 0}, {1, 2});
  CHECK(r.t == Catch::Approx(2.0));
  CHECK(r.y == Catch::Approx(1.0));
}

TEST_CASE("cone join of comparable points is the later one") {
  const SpaceTimePoint r = cone_join({1, 0}, {3, 0});
  CHECK(r.t == 3.0);
  CHECK(r.y == 0.0);
}

TEST_CASE("cone join is idempotent") {
  const SpaceTimePoint p{1.5, -0.5};
  const SpaceTimePoint r = cone_join(p, p);
  CHECK(r.t == p.t);
  CHECK(r.y == p.y);
}

TEST_CASE("cone join matches a grid-search least upper bound") {
  // oracle: scan a dyadic grid for the earliest point above both inputs;
  // dyadic inputs make every comparison exact
  auto oracle = [](const SpaceTimePoint& p, const SpaceTimePoint& q) {
    const double res = 1.0 / 128.0;
    for (int it = 0; it <= 1024; ++it) {
      const double t = it * res;
      for (int iy = -1024; iy <= 1024; ++iy) {
        const SpaceTimePoint r{t, iy * res};
        if (lightcone_leq(p, r) && lightcone_leq(q, r)) return r;
      }
    }
    return SpaceTimePoint{1e9, 0};
  };
  Rng rng(7);
  for (int rep = 0; rep < 10; ++rep) {
    const SpaceTimePoint p{std::round(rng.uniform(0, 3) * 16) / 16.0,
                           std::round(rng.uniform(-2, 2) * 16) / 16.0};
    const SpaceTimePoint q{std::round(rng.uniform(0, 3) * 16) / 16.0,
                           std::round(rng.uniform(-2, 2) * 16) / 16.0};
    const SpaceTimePoint got = cone_join(p, q);
    const SpaceTimePoint want = oracle(p, q);
    CHECK(got.t == want.t);
    CHECK(got.y == want.y);
  }
}

TEST_CASE("cone join properties on random triples") {
  Rng rng(42);
  for (int rep = 0; rep < 500; ++rep) {
    const SpaceTimePoint p = rand_cone_point(rng, 4);
    const SpaceTimePoint q = rand_cone_point(rng, 4);
    const SpaceTimePoint r = rand_cone_point(rng, 4);

    const SpaceTimePoint pq = cone_join(p, q);
    CHECK(lightcone_leq(p, pq));
    CHECK(lightcone_leq(q, pq));

    const SpaceTimePoint qp = cone_join(q, p);
    CHECK(pq.t == Catch::Approx(qp.t).margin(1e-12));
    CHECK(pq.y == Catch::Approx(qp.y).margin(1e-12));

    const SpaceTimePoint left = cone_join(cone_join(p, q), r);
    const SpaceTimePoint right = cone_join(p, cone_join(q, r));
    CHECK(left.t == Catch::Approx(right.t).margin(1e-12));
    CHECK(left.y == Catch::Approx(right.y).margin(1e-12));
  }
}

TEST_CASE("overlap poset with no coins is the start alone") {
  CoinConfig cfg;
  cfg.horizon = 3;
  const OverlapPoset o = overlap_poset(cfg);
  CHECK(o.poset.size() == 1);
  CHECK(o.poset.elements()[0] == "S");

  const OverlapPoset ob = overlap_poset_bruteforce(cfg, 0.05);
  CHECK(posets_equal(o.poset, ob.poset));
}

TEST_CASE("overlap poset of two incomparable coins forms a diamond") {
  CoinConfig cfg;
  cfg.horizon = 6;
  cfg.coins = {{"A", {1, 0.75}}, {"B", {1, -0.75}}};
  const OverlapPoset o = overlap_poset(cfg);
  CHECK(o.poset.size() == 4); // S, SA, SB, SAB
  CHECK(o.poset.contains("S,A,B"));
  CHECK(o.poset.leq("S", "S,A"));
  CHECK(o.poset.leq("S,A", "S,A,B"));
  CHECK_FALSE(o.poset.leq("S,A", "S,B"));

  CHECK(posets_equal(o.poset, overlap_poset_bruteforce(cfg, 0.05).poset));
}

TEST_CASE("single coin gives a 2-element overlap poset") {
  CoinConfig cfg;
  cfg.horizon = 4;
  cfg.coins = {{"A", {1, 0.5}}};
  const OverlapPoset ob = overlap_poset_bruteforce(cfg, 0.05);
  CHECK(ob.poset.size() == 2);
  CHECK(ob.poset.contains("S"));
  CHECK(ob.poset.contains("S,A"));
}

TEST_CASE("comparable coins collapse the lower singleton") {
  // A below C: U_{A,C} = U_C, so {S,C} is not maximal and {S,A,C} is
  CoinConfig cfg;
  cfg.horizon = 6;
  cfg.coins = {{"A", {1, 0}}, {"C", {3, 1}}};
  const OverlapPoset o = overlap_poset(cfg);
  CHECK(o.poset.size() == 3);
  CHECK(o.poset.contains("S"));
  CHECK(o.poset.contains("S,A"));
  CHECK(o.poset.contains("S,A,C"));
  CHECK(posets_equal(o.poset, overlap_poset_bruteforce(cfg, 0.05).poset));
}

TEST_CASE("join construction equals the brute-force oracle on random configs") {
  Rng rng(123);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 3 + static_cast<int>(rng.uniform_index(3));
    const CoinConfig cfg = random_config(rng, n, 5.0);
    const double res = cfg.min_spacing() / 20.0;
    const OverlapPoset fast = overlap_poset(cfg);
    const OverlapPoset slow = overlap_poset_bruteforce(cfg, res);
    INFO("coins " << n << " resolution " << res);
    CHECK(posets_equal(fast.poset, slow.poset));
  }
}

TEST_CASE("too coarse a resolution is rejected") {
  CoinConfig cfg;
  cfg.horizon = 4;
  cfg.coins = {{"A", {1, 0.5}}, {"B", {1.2, -0.5}}};
  CHECK_THROWS_AS(overlap_poset_bruteforce(cfg, 1.0), DomainError);
}

TEST_CASE("strat_label at the start and above a single coin") {
  CoinConfig cfg;
  cfg.horizon = 6;
  cfg.coins = {{"A", {1, 0.75}}, {"B", {1, -0.75}}};
  CHECK(strat_label(cfg, {0, 0}) == "S");
  CHECK(strat_label(cfg, {1.2, 0.75}) == "S,A");
  CHECK(strat_label(cfg, {4, 0}) == "S,A,B");
  CHECK_THROWS_AS(strat_label(cfg, {1, 5}), DomainError);
}

TEST_CASE("strat_label is monotone along the lightcone order") {
  Rng rng(31);
  CoinConfig cfg;
  cfg.horizon = 5;
  cfg.coins = {{"A", {1, 0.5}}, {"B", {1.5, -1}}, {"C", {2.5, 1.5}}};
  int checked = 0;
  while (checked < 10000) {
    const SpaceTimePoint p = rand_cone_point(rng, 4);
    const SpaceTimePoint q = rand_cone_point(rng, 5);
    if (!lightcone_leq(p, q) || q.t > cfg.horizon) continue;
    ++checked;
    const std::string lp = strat_label(cfg, p);
    const std::string lq = strat_label(cfg, q);
    // label(p) must be a subset of label(q): comma ids sort by label set
    std::set<std::string> sp, sq;
    for (const auto& c : cfg.coins) {
      if (lp.find("," + c.label) != std::string::npos) sp.insert(c.label);
      if (lq.find("," + c.label) != std::string::npos) sq.insert(c.label);
    }
    CHECK(std::includes(sq.begin(), sq.end(), sp.begin(), sp.end()));
  }
}

TEST_CASE("labels land inside the overlap poset") {
  Rng rng(77);
  const CoinConfig cfg = random_config(rng, 4, 5.0);
  const OverlapPoset o = overlap_poset(cfg);
  for (int rep = 0; rep < 2000; ++rep) {
    SpaceTimePoint p = rand_cone_point(rng, cfg.horizon);
    CHECK(o.poset.contains(strat_label(cfg, p)));
  }
}

namespace {

Trace yt_trace(const std::vector<double>& times, const std::vector<double>& ys) {
  Trace tr;
  tr.times = times;
  tr.channels = {"y"};
  for (double y : ys) {
    Eigen::VectorXd s(1);
    s[0] = y;
    tr.states.push_back(s);
  }
  return tr;
}

} // namespace

TEST_CASE("traj_stratify with the whole space as target") {
  std::vector<Trace> traces{yt_trace({0, 1, 2}, {0, 0.5, 1}), yt_trace({0, 1, 2}, {0, -1, -2})};
  const auto s = traj_stratify(traces, TargetSet::everything());
  CHECK(s.poset.size() == 1);
  CHECK(s.labels[0] == "{0,1,2}");
}

TEST_CASE("traj_stratify with empty target") {
  std::vector<Trace> traces{yt_trace({0, 1}, {0, 1})};
  const auto s = traj_stratify(traces, TargetSet::nothing());
  CHECK(s.labels[0] == "{}");
  CHECK(s.poset.size() == 1);
}

TEST_CASE("traj_stratify orders by reverse inclusion") {
  // target: y >= 1 (a closed half line)
  TargetSet t{[](const Eigen::VectorXd& x) { return x[0] >= 1.0; }};
  std::vector<Trace> traces{
      yt_trace({0, 1, 2, 3}, {0, 1, 1, 1}),  // inside from time 1 on
      yt_trace({0, 1, 2, 3}, {0, 0, 0, 1}),  // inside at the end only
      yt_trace({0, 1, 2, 3}, {0, 0, 0, 0}),  // never inside
  };
  const auto s = traj_stratify(traces, t);
  CHECK(s.labels[0] == "{1,2,3}");
  CHECK(s.labels[1] == "{3}");
  CHECK(s.labels[2] == "{}");
  // bigger visit sets are lower
  CHECK(s.poset.leq("{1,2,3}", "{3}"));
  CHECK(s.poset.leq("{3}", "{}"));
  CHECK_FALSE(s.poset.leq("{}", "{3}"));
}

TEST_CASE("traj_stratify closedness under pointwise limits") {
  // desk version of the closed-fiber argument: traces converging on the
  // sample grid with labels containing Z keep Z in the limit
  TargetSet t{[](const Eigen::VectorXd& x) { return x[0] <= 0.0; }}; // closed set
  const std::vector<double> grid{0, 1, 2};
  auto gamma_n = [&](int n) { return yt_trace(grid, {0, -1.0 / n, 1}); };
  const Trace limit = yt_trace(grid, {0, 0, 1});
  // every gamma_n label contains Z = {0, 1}
  for (int n : {1, 2, 4, 8, 64}) {
    const auto lab = target_times(gamma_n(n), t);
    CHECK(std::set<double>(lab.begin(), lab.end()).count(0));
    CHECK(std::set<double>(lab.begin(), lab.end()).count(1));
  }
  const auto lim_label = target_times(limit, t);
  CHECK(std::set<double>(lim_label.begin(), lim_label.end()) == std::set<double>{0, 1});
}

TEST_CASE("traj_chain collects coins in light-cone order") {
  CoinConfig cfg;
  cfg.horizon = 6;
  cfg.coins = {{"A", {1, 0.5}}, {"B", {2, -1.5}}, {"C", {3, 1.5}}};
  // pass through A then C at unit speed, missing B
  const Trace tr = yt_trace({0, 1, 2, 3, 4}, {0, 0.5, 1.0, 1.5, 1.5});
  CHECK(traj_chain(cfg, tr) == std::vector<std::string>{"A", "C"});

  const Trace avoid = yt_trace({0, 1, 2}, {0, -0.2, -0.4});
  CHECK(traj_chain(cfg, avoid).empty());
}

TEST_CASE("traj_chain rejects speed violations") {
  CoinConfig cfg;
  cfg.horizon = 3;
  cfg.coins = {{"A", {1, 0}}};
  const Trace bad = yt_trace({0, 1, 2}, {0, 1.5, 1});
  CHECK_THROWS_AS(traj_chain(cfg, bad), DomainError);
}

TEST_CASE("visited coins form a chain in the overlap order") {
  CoinConfig cfg;
  cfg.horizon = 8;
  cfg.coins = {{"A", {1, 0.5}}, {"C", {3, 1.5}}};
  const Trace tr = yt_trace({0, 1, 2, 3}, {0, 0.5, 1.0, 1.5});
  const auto chain = traj_chain(cfg, tr);
  REQUIRE(chain.size() == 2);
  CHECK(lightcone_leq(cfg.coins[0].at, cfg.coins[1].at));
}

TEST_CASE("policy tree from a 1x1 grid") {
  GridComplex g(1, 1);
  const auto m = grid_policy_stratification(g, {{GridComplex::face_id(0, 0), Move::None}});
  CHECK(m.check().ok);
  CHECK(m.target.size() == 1);
}

TEST_CASE("spanning-tree policy on a 3x3 grid is monotone onto a 9-node tree") {
  GridComplex g(3, 3);
  // goal at bottom-left face (2,0); everything first moves down, then left
  std::map<std::string, Move> policy;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      Move m = Move::None;
      if (r < 2) m = Move::Down;
      else if (c > 0) m = Move::Left;
      policy[GridComplex::face_id(r, c)] = m;
    }
  const auto m = grid_policy_stratification(g, policy);
  CHECK(m.target.size() == 9);
  CHECK(m.check().ok);
  // the goal face maps to the tree root, which is the unique minimum
  CHECK(m.assignment.at(GridComplex::face_id(2, 0)) == GridComplex::face_id(2, 0));
}

TEST_CASE("2-cycle policies are rejected with a witness") {
  GridComplex g(3, 3);
  std::map<std::string, Move> policy;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) policy[GridComplex::face_id(r, c)] = Move::Down;
  policy[GridComplex::face_id(2, 0)] = Move::Up; // bounce between (1,0) and (2,0)
  policy[GridComplex::face_id(1, 0)] = Move::Down;
  try {
    grid_policy_stratification(g, policy);
    FAIL("expected not-a-spanning-tree");
  } catch (const DomainError& e) {
    CHECK(e.code() == "not-a-spanning-tree");
  }
}

TEST_CASE("random spanning-tree policies stratify monotonically") {
  Rng rng(314);
  for (int rows = 1; rows <= 5; ++rows)
    for (int cols = 1; cols <= 5; ++cols) {
      for (int rep = 0; rep < 4; ++rep) {
        GridComplex g(rows, cols);
        // random spanning tree by randomized BFS from a random goal
        const int goal_r = static_cast<int>(rng.uniform_index(rows));
        const int goal_c = static_cast<int>(rng.uniform_index(cols));
        std::map<std::string, Move> policy;
        policy[GridComplex::face_id(goal_r, goal_c)] = Move::None;
        std::vector<std::pair<int, int>> frontier{{goal_r, goal_c}};
        while (!frontier.empty()) {
          const std::size_t pick = rng.uniform_index(frontier.size());
          auto [r, c] = frontier[pick];
          frontier.erase(frontier.begin() + static_cast<long>(pick));
          const std::pair<std::pair<int, int>, Move> nbrs[4] = {
              {{r - 1, c}, Move::Down}, {{r + 1, c}, Move::Up},
              {{r, c - 1}, Move::Right}, {{r, c + 1}, Move::Left}};
          for (const auto& [cell, back] : nbrs) {
            const auto [nr, nc] = cell;
            if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) continue;
            const std::string id = GridComplex::face_id(nr, nc);
            if (policy.count(id)) continue;
            policy[id] = back;
            frontier.emplace_back(nr, nc);
          }
        }
        const auto m = grid_policy_stratification(g, policy);
        CHECK(m.check().ok);
      }
    }
}
