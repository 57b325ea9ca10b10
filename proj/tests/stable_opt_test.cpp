#include <gtest/gtest.h>

#include <optional>
#include <random>
#include <set>
#include <tuple>

#include "fixtures.hpp"
#include "robustmatch/error.hpp"
#include "robustmatch/flow.hpp"
#include "robustmatch/generate.hpp"
#include "robustmatch/oracle.hpp"
#include "robustmatch/stable_opt.hpp"

namespace robustmatch {
namespace {

using testing::by_ids;
using testing::q;

Rational sum_sq(const Instance& in, const Matching& m) {
  Rational s = 0;
  for (AgentIndex a = 0; a < in.size(); ++a) s += in.cost(a, m.partner(a)) * in.cost(a, m.partner(a));
  return s;
}

TEST(MinSumSq, Gs3) {
  Instance in = testing::gs3().instance;
  EXPECT_EQ(min_sumsq_stable(in), testing::mu_egal(in));
  EXPECT_EQ(sum_sq(in, testing::mu_egal(in)), 24);
  EXPECT_EQ(sum_sq(in, testing::mu_men(in)), 30);
  Instance reduced = remove_agent(in, "m1");
  EXPECT_EQ(min_sumsq_stable(reduced), by_ids(reduced, {{"m2", "w2"}, {"m3", "w3"}}));
}

TEST(MinSumSq, MatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    Instance in = random_instance(2 + static_cast<int>(seed % 5), seed, seed % 3 != 0);
    Matching m = min_sumsq_stable(in);
    EXPECT_TRUE(is_stable(in, m));
    Rational best = sum_sq(in, m);
    for (const Matching& mu : oracle::enumerate_stable_matchings(in)) EXPECT_LE(best, sum_sq(in, mu)) << seed;
  }
}

TEST(Baselines, Gs3) {
  auto doc = testing::gs3();
  const Instance& in = doc.instance;
  BaselineSet b = compute_baselines(in, doc.leave);
  EXPECT_EQ(b.phi(), testing::mu_egal(in));
  ASSERT_EQ(b.by_leaver().size(), 1u);
  EXPECT_EQ(b.of(in.index_of("m1")), by_ids(in, {{"m2", "w2"}, {"m3", "w3"}}));
  BaselineSet only_phi = compute_baselines(in, LeaveDistribution::nobody_leaves(in.size()));
  EXPECT_TRUE(only_phi.by_leaver().empty());
}

TEST(Baselines, EveryLeaverStableInReducedInstance) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Instance in = random_instance(5, seed, true);
    LeaveDistribution leave = random_leave(in, in.size(), seed, false);
    BaselineSet b = compute_baselines(in, leave);
    EXPECT_EQ(b.by_leaver().size() + 1, 11u);
    for (const auto& [leaver, m] : b.by_leaver()) {
      EXPECT_TRUE(m.is_single(leaver));
      Instance reduced = remove_agent(in, leaver);
      EXPECT_TRUE(is_stable(reduced, translate_matching(in, m, reduced)));
    }
  }
}

struct Gs3Weights {
  InstanceDocument doc = testing::gs3();
  Lattice lattice = Lattice::build(doc.instance);
  BaselineSet base = compute_baselines(doc.instance, doc.leave);
  ObjectiveParams params(const Rational& nu) const { return ObjectiveParams(nu, doc.leave, {}, base); }
  Rational w(int r, const Rational& nu) const {
    return rotation_weight(doc.instance, lattice.rotations.rotations[static_cast<size_t>(r)], params(nu));
  }
};

TEST(RotationWeight, Gs3) {
  Gs3Weights g;
  EXPECT_EQ(g.w(0, 1), q(-9, 2));
  EXPECT_EQ(g.w(1, 1), q(9, 2));
  EXPECT_EQ(g.w(0, 0), q(15, 4));
  EXPECT_EQ(g.w(1, 0), q(57, 4));
}

TEST(FlowNetwork, Gs3Nu1) {
  Gs3Weights g;
  auto weighted = weigh_rotations(g.doc.instance, g.lattice, g.params(1));
  EXPECT_EQ(weighted.node_weight(0), q(9, 2));
  EXPECT_EQ(weighted.node_weight(1), q(-9, 2));
  FlowNetwork net = build_flow_network(weighted);
  EXPECT_EQ(net.surrogate_infinity, 10);
  std::set<std::tuple<int, int, Rational, bool>> edges;
  for (const auto& e : net.edges) edges.emplace(e.from, e.to, e.capacity, e.internal);
  std::set<std::tuple<int, int, Rational, bool>> expected{
      {0, net.sink(), q(9, 2), false}, {net.source(), 1, q(9, 2), false}, {0, 1, Rational(10), true}};
  EXPECT_EQ(edges, expected);

  MinCut cut = max_flow_min_cut(net);
  EXPECT_EQ(cut.flow_value, 0);
  EXPECT_TRUE(cut.cut_edges.empty());
  EXPECT_EQ(extract_optimal_closed_subset(weighted, cut), std::vector<int>{0});
}

TEST(FlowNetwork, Gs3Nu0) {
  Gs3Weights g;
  auto weighted = weigh_rotations(g.doc.instance, g.lattice, g.params(0));
  FlowNetwork net = build_flow_network(weighted);
  int terminal = 0;
  for (const auto& e : net.edges) {
    if (e.internal) continue;
    ++terminal;
    EXPECT_EQ(e.from, net.source());
  }
  EXPECT_EQ(terminal, 2);
  EXPECT_TRUE(max_weight_closed_subset(weighted).empty());
}

TEST(FlowNetwork, Degenerate) {
  WeightedRotationDigraph empty{RotationDigraph(0, {}), {}};
  FlowNetwork net = build_flow_network(empty);
  EXPECT_TRUE(net.edges.empty());
  EXPECT_EQ(max_flow_min_cut(net).flow_value, 0);

  WeightedRotationDigraph single{RotationDigraph(1, {}), {Rational(-5)}};
  MinCut cut = max_flow_min_cut(build_flow_network(single));
  EXPECT_EQ(cut.flow_value, 0);
  EXPECT_TRUE(cut.cut_edges.empty());
  EXPECT_EQ(max_weight_closed_subset(single), std::vector<int>{0});

  WeightedRotationDigraph positives{RotationDigraph(3, {}), {Rational(-1), Rational(-2), q(-1, 3)}};
  EXPECT_EQ(max_weight_closed_subset(positives), (std::vector<int>{0, 1, 2}));

  WeightedRotationDigraph zero{RotationDigraph(2, {{0, 1}}), {Rational(0), Rational(-1)}};
  EXPECT_EQ(max_weight_closed_subset(zero), (std::vector<int>{0, 1}));
  WeightedRotationDigraph idle{RotationDigraph(1, {}), {Rational(0)}};
  EXPECT_TRUE(max_weight_closed_subset(idle).empty());
}

TEST(FlowNetwork, Bottleneck) {
  FlowNetwork net;
  net.num_rotations = 2;
  net.surrogate_infinity = 11;
  net.edges = {{net.source(), 0, Rational(3), false}, {0, 1, Rational(11), true}, {1, net.sink(), Rational(7), false}};
  MinCut cut = max_flow_min_cut(net);
  EXPECT_EQ(cut.flow_value, 3);
  EXPECT_EQ(cut.cut_edges, std::vector<int>{0});
  EXPECT_TRUE(cut.source_side[static_cast<size_t>(net.source())]);
  EXPECT_FALSE(cut.source_side[0]);
}

// Max flow equals the cheapest of all 2^R cuts.
TEST(FlowNetwork, FlowEqualsMinimumOverAllCuts) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    int r = 1 + static_cast<int>(rng() % 10);
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < r; ++a)
      for (int b = a + 1; b < r; ++b)
        if (rng() % 4 == 0) edges.emplace_back(a, b);
    std::vector<Rational> change;
    for (int k = 0; k < r; ++k) change.push_back(make_rational(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 4)));
    WeightedRotationDigraph weighted{RotationDigraph(r, edges), change};
    FlowNetwork net = build_flow_network(weighted);
    MinCut cut = max_flow_min_cut(net);

    std::optional<Rational> best;
    for (long mask = 0; mask < (1L << r); ++mask) {
      auto on_source = [&](int v) { return v == net.source() || (v < r && (mask >> v & 1)); };
      Rational cap = 0;
      for (const auto& e : net.edges)
        if (on_source(e.from) && !on_source(e.to)) cap += e.capacity;
      if (!best || cap < *best) best = cap;
    }
    EXPECT_EQ(cut.flow_value, *best) << trial;

    // The extracted subset is closed and has maximum weight.
    auto subset = extract_optimal_closed_subset(weighted, cut);
    EXPECT_TRUE(weighted.digraph.is_closed(subset));
    Rational got = 0;
    for (int v : subset) got += weighted.node_weight(v);
    for (long mask = 0; mask < (1L << r); ++mask) {
      std::vector<int> s;
      for (int k = 0; k < r; ++k)
        if (mask >> k & 1) s.push_back(k);
      if (!weighted.digraph.is_closed(s)) continue;
      Rational w = 0;
      for (int v : s) w += weighted.node_weight(v);
      EXPECT_LE(w, got) << trial;
    }
  }
}

TEST(SolveRobust, Gs3) {
  auto doc = testing::gs3();
  const Instance& in = doc.instance;
  auto one = solve_robust(in, 1, doc.leave);
  EXPECT_EQ(one.matching, testing::mu_egal(in));
  EXPECT_EQ(one.psi, 30);
  EXPECT_EQ(one.closed_subset, std::vector<int>{0});
  EXPECT_EQ(one.mode, SolveMode::kStable);
  auto zero = solve_robust(in, 0, doc.leave);
  EXPECT_EQ(zero.matching, testing::mu_men(in));
  EXPECT_EQ(zero.psi, q(9, 4));
  EXPECT_TRUE(zero.closed_subset.empty());
}

TEST(SolveRobust, MatchesBruteForce) {
  const Rational nus[] = {0, q(1, 4), q(1, 2), q(3, 4), 1};
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Instance in = random_instance(2 + static_cast<int>(seed % 4), seed, seed % 2 == 0);
    LeaveDistribution leave = random_leave(in, 1 + static_cast<int>(seed % 4), seed);
    Lattice lattice = Lattice::build(in);
    BaselineSet base = compute_baselines(in, leave);
    for (const Rational& nu : nus) {
      ObjectiveParams params(nu, leave, {}, base);
      auto sol = solve_robust(in, params, lattice);
      EXPECT_TRUE(is_stable(in, sol.matching));
      EXPECT_EQ(sol.psi, oracle::brute_solve(in, params, oracle::Domain::kStable).psi) << seed;
      EXPECT_EQ(matching_of_closed_subset(lattice, sol.closed_subset), sol.matching);
    }
  }
}

// Eliminating a rotation changes psi by the same amount wherever it is
// exposed, and psi telescopes over closed subsets.
TEST(SolveRobust, WeightInvarianceAndTelescoping) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Instance in = random_instance(3 + static_cast<int>(seed % 3), seed + 100, seed % 2 == 1);
    LeaveDistribution leave = random_leave(in, 2, seed);
    ConventionPair conv{seed % 2 ? Convention::kSelf : Convention::kRetained,
                        seed % 3 ? Convention::kRetained : Convention::kSelf};
    ObjectiveParams params(q(static_cast<long>(seed % 3), 2), leave, conv, compute_baselines(in, leave));
    Lattice lattice = Lattice::build(in);
    auto weighted = weigh_rotations(in, lattice, params);
    Rational base = psi(in, lattice.rotations.men_optimal, params);
    int r = lattice.size();
    for (long mask = 0; mask < (1L << r); ++mask) {
      std::vector<int> s;
      Rational expected = base;
      for (int k = 0; k < r; ++k)
        if (mask >> k & 1) {
          s.push_back(k);
          expected += weighted.change[static_cast<size_t>(k)];
        }
      if (!lattice.digraph.is_closed(s)) continue;
      Matching m = matching_of_closed_subset(lattice, s);
      EXPECT_EQ(psi(in, m, params), expected) << seed;
      for (const Rotation& rot : lattice.rotations.rotations) {
        bool exposed = true;
        for (size_t i = 0; i < rot.pairs.size(); ++i) exposed &= m.partner(rot.man(i)) == rot.woman(i);
        if (!exposed) continue;
        // Stability also requires the rotation to be exposed in the lists,
        // which holds iff all its predecessors are in s.
        std::vector<int> with = s;
        with.push_back(rot.index);
        if (!lattice.digraph.is_closed(with)) continue;
        EXPECT_EQ(psi(in, apply_rotation(m, rot), params) - psi(in, m, params),
                  weighted.change[static_cast<size_t>(rot.index)])
            << seed;
      }
    }
  }
}

TEST(SolveRobust, DegenerateParameters) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Instance in = random_instance(2 + static_cast<int>(seed % 5), seed, seed % 2 == 0);
    LeaveDistribution leave = LeaveDistribution::nobody_leaves(in.size());
    EXPECT_EQ(solve_robust(in, 1, leave).matching, min_sumsq_stable(in));
    auto zero = solve_robust(in, 0, leave);
    EXPECT_EQ(zero.psi, 0);
    EXPECT_EQ(zero.matching, compute_baselines(in, leave).phi());
  }
}

}  // namespace
}  // namespace robustmatch
