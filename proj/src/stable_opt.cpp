#include "robustmatch/stable_opt.hpp"

#include "robustmatch/error.hpp"

namespace robustmatch {

std::string_view to_string(SolveMode mode) { return mode == SolveMode::kStable ? "stable" : "relaxed"; }

Matching min_sumsq_stable(const Instance& instance, const Lattice& lattice) {
  WeightedRotationDigraph weighted{lattice.digraph, {}};
  for (const Rotation& rot : lattice.rotations.rotations) {
    Rational change = 0;
    for (size_t i = 0; i < rot.pairs.size(); ++i) {
      const AgentIndex m = rot.man(i), w = rot.woman(i), next = rot.next_woman(i);
      const Rational& before_m = instance.cost(m, w);
      const Rational& after_m = instance.cost(m, next);
      // Woman `next` trades her old partner (man i + 1) for man i.
      const Rational& before_w = instance.cost(next, rot.man((i + 1) % rot.pairs.size()));
      const Rational& after_w = instance.cost(next, m);
      change += after_m * after_m - before_m * before_m + after_w * after_w - before_w * before_w;
    }
    weighted.change.push_back(std::move(change));
  }
  return matching_of_closed_subset(lattice, max_weight_closed_subset(weighted));
}

Matching min_sumsq_stable(const Instance& instance) { return min_sumsq_stable(instance, Lattice::build(instance)); }

BaselineSet compute_baselines(const Instance& instance, const LeaveDistribution& leave) {
  if (leave.size() != instance.size()) throw PreconditionError("leave distribution does not fit instance");
  Matching phi = min_sumsq_stable(instance);
  std::map<AgentIndex, Matching> by_leaver;
  for (AgentIndex a : leave.possible_leavers()) {
    Instance reduced = remove_agent(instance, a);
    by_leaver.emplace(a, translate_matching(reduced, min_sumsq_stable(reduced), instance));
  }
  return BaselineSet(std::move(phi), std::move(by_leaver));
}

Rational rotation_weight(const Instance& instance, const Rotation& rotation, const ObjectiveParams& params) {
  // Partners of the rotation's agents before and after elimination.
  struct Move {
    AgentIndex agent, before, after;
  };
  std::vector<Move> moves;
  const size_t r = rotation.pairs.size();
  for (size_t i = 0; i < r; ++i) {
    moves.push_back({rotation.man(i), rotation.woman(i), rotation.next_woman(i)});
    moves.push_back({rotation.next_woman(i), rotation.man((i + 1) % r), rotation.man(i)});
  }
  Rational total = 0;
  for (const Leaver& leaver : params.events()) {
    Rational sum = 0;
    for (const Move& mv : moves) {
      if (leaver && mv.agent == *leaver) continue;
      sum += agent_term(instance, mv.agent, mv.after, leaver, params);
      sum -= agent_term(instance, mv.agent, mv.before, leaver, params);
    }
    total += params.probability(leaver) * sum;
  }
  return total;
}

WeightedRotationDigraph weigh_rotations(const Instance& instance, const Lattice& lattice, const ObjectiveParams& params) {
  WeightedRotationDigraph weighted{lattice.digraph, {}};
  weighted.change.reserve(lattice.rotations.rotations.size());
  for (const Rotation& rot : lattice.rotations.rotations) weighted.change.push_back(rotation_weight(instance, rot, params));
  return weighted;
}

RobustSolution solve_robust(const Instance& instance, const ObjectiveParams& params, const Lattice& lattice) {
  WeightedRotationDigraph weighted = weigh_rotations(instance, lattice, params);
  RobustSolution out;
  out.mode = SolveMode::kStable;
  out.closed_subset = max_weight_closed_subset(weighted);
  out.matching = matching_of_closed_subset(lattice, out.closed_subset);
  out.breakdown = psi_breakdown(instance, out.matching, params);
  out.psi = out.breakdown.total;

  Rational telescoped = psi(instance, lattice.rotations.men_optimal, params);
  for (int v : out.closed_subset) telescoped += weighted.change[static_cast<size_t>(v)];
  if (telescoped != out.psi) throw InvariantError("psi of the solution disagrees with the rotation weights");
  return out;
}

RobustSolution solve_robust(const Instance& instance, const Rational& nu, const LeaveDistribution& leave,
                            ConventionPair conventions) {
  ObjectiveParams params(nu, leave, conventions, compute_baselines(instance, leave));
  return solve_robust(instance, params, Lattice::build(instance));
}

}  // namespace robustmatch
