#include <gtest/gtest.h>

#include <string>

#include "fixtures.hpp"
#include "robustmatch/error.hpp"
#include "robustmatch/generate.hpp"
#include "robustmatch/io.hpp"
#include "robustmatch/lattice.hpp"
#include "robustmatch/oracle.hpp"

namespace robustmatch {
namespace {

using testing::by_ids;
using testing::gs3;
using testing::q;

std::string replace_once(std::string s, const std::string& from, const std::string& to) {
  auto pos = s.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return s.replace(pos, from.size(), to);
}

TEST(ParseInstance, Gs3) {
  auto doc = gs3();
  EXPECT_EQ(doc.instance.size(), 6);
  EXPECT_EQ(doc.instance.num_men(), 3);
  EXPECT_EQ(doc.leave.p(doc.instance.index_of("m1")), q(3, 4));
  EXPECT_EQ(doc.leave.p_phi(), q(1, 4));
  EXPECT_FALSE(doc.nu.has_value());

  const auto& in = doc.instance;
  AgentIndex m2 = in.index_of("m2");
  std::vector<std::string> prefs;
  for (AgentIndex b : in.preferences(m2)) prefs.push_back(in.id(b));
  EXPECT_EQ(prefs, (std::vector<std::string>{"w2", "w3", "w1", "m2"}));
}

TEST(ParseInstance, NobodyLeaves) {
  std::string text = R"({"men": ["a"], "women": ["b"],
    "costs": {"a": [["b", 1, 2], ["a", 1, 1]], "b": [["a", 0, 1], ["b", 3, 1]]},
    "leave": {"phi": [1, 1]}, "nu": [1, 3]})";
  auto doc = parse_instance(text);
  EXPECT_EQ(doc.leave.p_phi(), 1);
  EXPECT_TRUE(doc.leave.possible_leavers().empty());
  EXPECT_EQ(*doc.nu, q(1, 3));
  EXPECT_EQ(doc.instance.cost(0, 1), q(1, 2));
}

TEST(ParseInstance, RejectsTies) {
  std::string text = replace_once(testing::kGs3Document, R"(["w2", 2, 1], ["w3", 3, 1], ["m1")",
                                  R"(["w2", 1, 1], ["w3", 3, 1], ["m1")");
  EXPECT_THROW(parse_instance(text), InputError);
}

TEST(ParseInstance, RejectsBadDocuments) {
  const std::string base = testing::kGs3Document;
  EXPECT_THROW(parse_instance("{not json"), InputError);
  EXPECT_THROW(parse_instance(replace_once(base, R"("women": ["w1", "w2", "w3"])", R"("women": ["w1", "w2", "m1"])")),
               InputError);  // duplicate id
  EXPECT_THROW(parse_instance(replace_once(base, R"(, ["m1", 4, 1]])", "]")), InputError);  // no self cost
  EXPECT_THROW(parse_instance(replace_once(base, R"("phi": [1, 4])", R"("phi": [1, 2])")), InputError);
  EXPECT_THROW(parse_instance(replace_once(base, R"(["w1", 1, 1], ["w2", 2, 1])", R"(["w1", -1, 1], ["w2", 2, 1])")),
               InputError);
  EXPECT_THROW(parse_instance(replace_once(base, R"(["w1", 1, 1], ["w2", 2, 1])", R"(["w9", 1, 1], ["w2", 2, 1])")),
               InputError);
  EXPECT_THROW(parse_instance(replace_once(base, R"("phi": [1, 4], "m1": [3, 4])", R"("m1": [1, 1])")), InputError);
}

TEST(ParseInstance, RoundTripsThroughSerializer) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Instance in = random_instance(1 + static_cast<int>(seed % 5), seed, seed % 2 == 0);
    LeaveDistribution leave = random_leave(in, static_cast<int>(seed % 3), seed);
    std::optional<Rational> nu;
    if (seed % 3 == 0) nu = q(static_cast<long>(seed % 4), 4);
    std::string text = serialize_instance(in, leave, nu);
    auto back = parse_instance(text);
    EXPECT_EQ(back.instance, in);
    EXPECT_EQ(back.leave, leave);
    EXPECT_EQ(back.nu, nu);
    EXPECT_EQ(serialize_instance(back.instance, back.leave, back.nu), text);
  }
}

TEST(RemoveAgent, Gs3WithoutM1HasOneStableMatching) {
  auto doc = gs3();
  Instance reduced = remove_agent(doc.instance, "m1");
  EXPECT_EQ(reduced.size(), 5);
  EXPECT_EQ(reduced.num_men(), 2);
  auto stable = oracle::enumerate_stable_matchings(reduced);
  ASSERT_EQ(stable.size(), 1u);
  EXPECT_EQ(stable[0], by_ids(reduced, {{"m2", "w2"}, {"m3", "w3"}}));
  EXPECT_TRUE(stable[0].is_single(reduced.index_of("w1")));
  EXPECT_THROW(remove_agent(reduced, "m1"), InputError);
}

TEST(RemoveAgent, UnequalSidesLeaveAManSingle) {
  Instance reduced = remove_agent(gs3().instance, "w2");
  EXPECT_EQ(reduced.num_men(), 3);
  EXPECT_EQ(reduced.num_women(), 2);
  for (const Matching& m : oracle::enumerate_matchings(reduced)) {
    int single_men = 0;
    for (AgentIndex a = 0; a < reduced.num_men(); ++a) single_men += m.is_single(a) ? 1 : 0;
    EXPECT_GE(single_men, 1);
  }
}

TEST(RemoveAgent, KeepsOtherCosts) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Instance in = random_instance(4, seed, seed % 2 == 1);
    AgentIndex leaver = static_cast<AgentIndex>(seed % 8);
    Instance reduced = remove_agent(in, leaver);
    for (AgentIndex a = 0; a < reduced.size(); ++a)
      for (AgentIndex b = 0; b < reduced.size(); ++b) {
        if (!reduced.has_cost(a, b)) continue;
        EXPECT_EQ(reduced.cost(a, b), in.cost(in.index_of(reduced.id(a)), in.index_of(reduced.id(b))));
      }
  }
}

TEST(IsStable, Gs3Matchings) {
  const Instance in = gs3().instance;
  EXPECT_TRUE(is_stable(in, testing::mu_men(in)));
  EXPECT_TRUE(is_stable(in, testing::mu_egal(in)));
  EXPECT_TRUE(is_stable(in, testing::mu_women(in)));

  // Checked by hand: only m2 and w3 prefer each other here.
  auto report = check_stability(in, by_ids(in, {{"m1", "w2"}, {"m2", "w1"}, {"m3", "w3"}}));
  EXPECT_FALSE(report.stable);
  ASSERT_EQ(report.blocking_pairs.size(), 1u);
  EXPECT_EQ(report.blocking_pairs[0], (BlockingPair{in.index_of("m2"), in.index_of("w3")}));
}

TEST(IsStable, SinglesAndIndividualRationality) {
  const Instance in = gs3().instance;
  auto report = check_stability(in, Matching::singles(in.size()));
  EXPECT_FALSE(report.stable);
  EXPECT_TRUE(report.individually_irrational.empty());
  EXPECT_EQ(report.blocking_pairs.size(), 9u);
  // Blocking pairs come ordered by (man, woman).
  EXPECT_TRUE(std::is_sorted(report.blocking_pairs.begin(), report.blocking_pairs.end(),
                             [](const BlockingPair& a, const BlockingPair& b) {
                               return std::pair(a.man, a.woman) < std::pair(b.man, b.woman);
                             }));
}

TEST(IsStable, RejectsForeignMatchings) {
  const Instance in = gs3().instance;
  EXPECT_THROW(check_stability(in, Matching::singles(5)), InputError);
  Matching bad = Matching::singles(6);
  bad.set_pair(0, 1);  // two men
  EXPECT_THROW(check_stability(in, bad), InputError);
}

TEST(IsStable, UnacceptablePartnerIsIndividuallyIrrational) {
  std::string text = R"({"men": ["a"], "women": ["b"],
    "costs": {"a": [["b", 2, 1], ["a", 1, 1]], "b": [["a", 1, 1], ["b", 2, 1]]},
    "leave": {"phi": [1, 1]}})";
  Instance in = parse_instance(text).instance;
  auto report = check_stability(in, Matching::from_pairs(2, std::vector<std::pair<AgentIndex, AgentIndex>>{{0, 1}}));
  EXPECT_FALSE(report.stable);
  EXPECT_EQ(report.individually_irrational, std::vector<AgentIndex>{0});
  EXPECT_TRUE(is_stable(in, Matching::singles(2)));
}

TEST(RandomInstance, Deterministic) {
  EXPECT_EQ(random_instance(3, 42, true), random_instance(3, 42, true));
  EXPECT_EQ(random_instance(5, 7, false), random_instance(5, 7, false));
  EXPECT_FALSE(random_instance(5, 7, true) == random_instance(5, 8, true));
  EXPECT_THROW(random_instance(0, 1, true), InputError);
}

TEST(RandomInstance, SmallestInstance) {
  Instance in = random_instance(1, 123, true);
  ASSERT_EQ(in.size(), 2);
  EXPECT_EQ(in.cost(0, 1), 1);
  EXPECT_EQ(in.cost(0, 0), 2);
  EXPECT_EQ(in.cost(1, 0), 1);
  EXPECT_EQ(in.cost(1, 1), 2);
}

TEST(RandomInstance, PassesValidation) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Instance in = random_instance(6, seed, true);
    LeaveDistribution leave = LeaveDistribution::nobody_leaves(in.size());
    // Re-validate through the parser.
    EXPECT_NO_THROW(parse_instance(serialize_instance(in, leave)));
    for (AgentIndex a = 0; a < in.size(); ++a) EXPECT_EQ(in.rank(a, a), 6);
  }
}

TEST(RandomInstance, SelfPositionVaries) {
  bool saw_early_self = false;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Instance in = random_instance(4, seed, false);
    for (AgentIndex a = 0; a < in.size(); ++a) saw_early_self |= in.rank(a, a) < 4;
  }
  EXPECT_TRUE(saw_early_self);
}

// Men-proposing deferred acceptance always yields a stable matching.
TEST(CoreProperties, DeferredAcceptanceIsStable) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Instance in = random_instance(1 + static_cast<int>(seed % 8), seed, seed % 3 != 0);
    EXPECT_TRUE(is_stable(in, propose_da(in, Side::kMen).matching)) << seed;
    EXPECT_TRUE(is_stable(in, propose_da(in, Side::kWomen).matching)) << seed;
  }
}

// Every stable matching leaves the same agents single.
TEST(CoreProperties, SameSinglesAcrossStableMatchings) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Instance in = random_instance(2 + static_cast<int>(seed % 4), seed, false);
    if (seed % 2) in = remove_agent(in, static_cast<AgentIndex>(seed % static_cast<std::uint64_t>(in.size())));
    auto stable = oracle::enumerate_stable_matchings(in);
    ASSERT_FALSE(stable.empty());
    for (const Matching& m : stable)
      for (AgentIndex a = 0; a < in.size(); ++a) EXPECT_EQ(m.is_single(a), stable[0].is_single(a)) << seed;
  }
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("3/4"), q(3, 4));
  EXPECT_EQ(parse_rational("6/8"), q(3, 4));
  EXPECT_EQ(parse_rational("0.25"), q(1, 4));
  EXPECT_EQ(parse_rational("1"), 1);
  EXPECT_EQ(parse_rational(".5"), q(1, 2));
  EXPECT_EQ(to_string(q(69, 2)), "69/2");
  EXPECT_EQ(to_string(q(30)), "30");
  EXPECT_EQ(to_decimal_string(q(69, 2)), "34.5");
  EXPECT_EQ(to_decimal_string(q(1, 3), 4), "0.3333");
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational("abc"), InputError);
  EXPECT_THROW(parse_rational(""), InputError);
}

}  // namespace
}  // namespace robustmatch
