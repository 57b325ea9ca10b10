#ifndef ROBUSTMATCH_ORACLE_HPP_
#define ROBUSTMATCH_ORACLE_HPP_

#include <set>
#include <utility>
#include <vector>

#include "robustmatch/instance.hpp"
#include "robustmatch/objective.hpp"

// Brute-force reference implementations for small instances. Deliberately
// naive and independent of the rotation machinery.
namespace robustmatch::oracle {

inline constexpr int kDefaultMatchingBound = 12;
inline constexpr int kDefaultPosetBound = 6;  // agents per side

// All sex-respecting involutions, singles included. Men are assigned in index
// order; for each man "single" comes before women in index order.
// Throws PreconditionError when the instance has more than `max_agents`.
std::vector<Matching> enumerate_matchings(const Instance& instance, int max_agents = kDefaultMatchingBound);

std::vector<Matching> enumerate_stable_matchings(const Instance& instance, int max_agents = kDefaultMatchingBound);

enum class Domain { kStable, kAll };

struct BruteResult {
  Matching matching;
  Rational psi;
};

// Exact psi minimizer over the domain; the first minimizer in enumeration
// order wins ties.
BruteResult brute_solve(const Instance& instance, const ObjectiveParams& params, Domain domain,
                        int max_agents = kDefaultMatchingBound);

// A rotation as seen from the brute-force lattice: the (man, woman) pairs it
// breaks, sorted by man.
using PairSet = std::vector<std::pair<AgentIndex, AgentIndex>>;

struct PosetOracle {
  std::vector<PairSet> rotations;
  // (a, b): rotation a must be eliminated before rotation b.
  std::set<std::pair<int, int>> precedes;
  // Each stable matching with the set of rotations eliminated to reach it
  // from the men-optimal matching.
  std::vector<std::pair<Matching, std::set<int>>> eliminated;

  int find(const PairSet& pairs) const;
};

// Rotations and their precedence recovered from the brute-force lattice of
// stable matchings: every covering step between two stable matchings breaks
// exactly one rotation, and every path from the men-optimal matching is
// explored. Throws PreconditionError when either side exceeds `max_per_side`.
PosetOracle poset_oracle(const Instance& instance, int max_per_side = kDefaultPosetBound);

// Number of closed subsets of a precedence relation over `num_nodes` nodes,
// by exhaustive enumeration (num_nodes <= 20).
long count_closed_subsets(int num_nodes, const std::set<std::pair<int, int>>& precedes);

}  // namespace robustmatch::oracle

#endif  // ROBUSTMATCH_ORACLE_HPP_
