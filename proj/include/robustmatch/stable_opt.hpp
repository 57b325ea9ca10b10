#ifndef ROBUSTMATCH_STABLE_OPT_HPP_
#define ROBUSTMATCH_STABLE_OPT_HPP_

#include <string_view>
#include <vector>

#include "robustmatch/flow.hpp"
#include "robustmatch/instance.hpp"
#include "robustmatch/lattice.hpp"
#include "robustmatch/objective.hpp"

namespace robustmatch {

// Stable matching minimizing the sum of squared costs over all agents. Ties
// are broken by the closure extraction rule, so the answer is deterministic.
Matching min_sumsq_stable(const Instance& instance);
Matching min_sumsq_stable(const Instance& instance, const Lattice& lattice);

// Baselines for nobody-leaves and for every agent with positive departure
// probability, each the min-sum-of-squares stable matching of the instance
// without that agent.
BaselineSet compute_baselines(const Instance& instance, const LeaveDistribution& leave);

// Change in psi caused by eliminating `rotation`; depends only on the
// rotation's own agents.
Rational rotation_weight(const Instance& instance, const Rotation& rotation, const ObjectiveParams& params);

WeightedRotationDigraph weigh_rotations(const Instance& instance, const Lattice& lattice, const ObjectiveParams& params);

enum class SolveMode { kStable, kRelaxed };
std::string_view to_string(SolveMode mode);

struct RobustSolution {
  SolveMode mode = SolveMode::kStable;
  Matching matching;
  Rational psi;
  PsiBreakdown breakdown;
  // Eliminated rotations (stable mode only).
  std::vector<int> closed_subset;
};

// Stable matching minimizing psi. Builds baselines and the rotation lattice.
RobustSolution solve_robust(const Instance& instance, const Rational& nu, const LeaveDistribution& leave,
                            ConventionPair conventions = {});
// Same with precomputed parameters and lattice.
RobustSolution solve_robust(const Instance& instance, const ObjectiveParams& params, const Lattice& lattice);

}  // namespace robustmatch

#endif  // ROBUSTMATCH_STABLE_OPT_HPP_
