#include "robustmatch/objective.hpp"

#include "robustmatch/error.hpp"

namespace robustmatch {

const Matching& BaselineSet::of(Leaver leaver) const {
  if (!leaver) return phi_;
  auto it = by_leaver_.find(*leaver);
  if (it == by_leaver_.end()) throw PreconditionError("no baseline for leaver " + std::to_string(*leaver));
  return it->second;
}

ObjectiveParams::ObjectiveParams(Rational nu, LeaveDistribution leave, ConventionPair conventions,
                                 BaselineSet baselines)
    : nu_(std::move(nu)), leave_(std::move(leave)), conventions_(conventions), baselines_(std::move(baselines)) {
  if (nu_ < 0 || nu_ > 1) throw InputError("nu outside [0, 1]");
  if (baselines_.phi().size() != leave_.size())
    throw PreconditionError("baseline for nobody-leaves does not match the instance size");
  if (leave_.p_phi() > 0) events_.push_back(std::nullopt);
  for (AgentIndex a : leave_.possible_leavers()) {
    if (!baselines_.has(a)) throw PreconditionError("missing baseline for possible leaver " + std::to_string(a));
    events_.push_back(a);
  }
  for (const auto& [a, m] : baselines_.by_leaver()) {
    if (a < 0 || a >= leave_.size() || leave_.p(a) == 0)
      throw PreconditionError("baseline given for an agent that never leaves");
    if (m.size() != leave_.size() || !m.is_single(a))
      throw PreconditionError("baseline for a leaver must keep the leaver single");
  }
}

Rational displayed_cost(const Instance& instance, const Matching& matching, Leaver leaver, AgentIndex agent,
                        Convention convention) {
  if (leaver && *leaver == agent) throw PreconditionError("the leaver has no displayed cost");
  AgentIndex partner = matching.partner(agent);
  if (leaver && partner == *leaver && convention == Convention::kSelf) return instance.cost(agent, agent);
  return instance.cost(agent, partner);
}

Rational agent_term(const Instance& instance, AgentIndex agent, AgentIndex partner, Leaver leaver,
                    const ObjectiveParams& params) {
  const bool abandoned = leaver && partner == *leaver;
  const Rational& d = abandoned && params.conventions().cost_term == Convention::kSelf ? instance.cost(agent, agent)
                                                                                      : instance.cost(agent, partner);
  const Rational& r = abandoned && params.conventions().regret_term == Convention::kSelf
                          ? instance.cost(agent, agent)
                          : instance.cost(agent, partner);
  const Rational& b = instance.cost(agent, params.baselines().of(leaver).partner(agent));
  Rational regret = r - b;
  Rational out = params.nu() * d * d;
  out += (1 - params.nu()) * regret * regret;
  return out;
}

PsiBreakdown psi_breakdown(const Instance& instance, const Matching& matching, const ObjectiveParams& params) {
  validate_matching(instance, matching);
  if (params.leave().size() != instance.size()) throw PreconditionError("leave distribution does not fit instance");
  PsiBreakdown out;
  for (const Leaver& leaver : params.events()) {
    Rational sum = 0;
    for (AgentIndex a = 0; a < instance.size(); ++a) {
      if (leaver && a == *leaver) continue;
      sum += agent_term(instance, a, matching.partner(a), leaver, params);
    }
    const Rational& p = params.probability(leaver);
    out.terms.push_back({leaver, p, p * sum});
    out.total += out.terms.back().contribution;
  }
  return out;
}

Rational psi(const Instance& instance, const Matching& matching, const ObjectiveParams& params) {
  return psi_breakdown(instance, matching, params).total;
}

int blocking_pairs_after(const Instance& instance, const Matching& matching, Leaver leaver) {
  auto partner = [&](AgentIndex a) {
    AgentIndex b = matching.partner(a);
    return leaver && b == *leaver ? a : b;
  };
  int count = 0;
  for (AgentIndex m = 0; m < instance.num_men(); ++m) {
    if (leaver && m == *leaver) continue;
    for (AgentIndex w = instance.num_men(); w < instance.size(); ++w) {
      if (leaver && w == *leaver) continue;
      if (instance.prefers(m, w, partner(m)) && instance.prefers(w, m, partner(w))) ++count;
    }
  }
  return count;
}

Rational expected_blocking_pairs(const Instance& instance, const Matching& matching, const LeaveDistribution& leave) {
  validate_matching(instance, matching);
  if (leave.size() != instance.size()) throw PreconditionError("leave distribution does not fit instance");
  Rational total = 0;
  if (leave.p_phi() > 0) total += leave.p_phi() * blocking_pairs_after(instance, matching, std::nullopt);
  for (AgentIndex a : leave.possible_leavers()) total += leave.p(a) * blocking_pairs_after(instance, matching, a);
  return total;
}

}  // namespace robustmatch
