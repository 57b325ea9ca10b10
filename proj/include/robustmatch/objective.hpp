#ifndef ROBUSTMATCH_OBJECTIVE_HPP_
#define ROBUSTMATCH_OBJECTIVE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "robustmatch/instance.hpp"
#include "robustmatch/rational.hpp"

namespace robustmatch {

// Who departs: an agent, or nobody (std::nullopt).
using Leaver = std::optional<AgentIndex>;

// How to charge an agent whose partner is the one who left: as if single
// (kSelf) or at the cost of the departed partner (kRetained).
enum class Convention : std::uint8_t { kSelf, kRetained };

struct ConventionPair {
  Convention cost_term = Convention::kSelf;
  Convention regret_term = Convention::kRetained;
  friend bool operator==(const ConventionPair&, const ConventionPair&) = default;
};

// Re-optimized reference matchings, one per possible departure. Every
// matching is expressed on the full instance with the leaver single.
class BaselineSet {
 public:
  BaselineSet() = default;
  BaselineSet(Matching nobody_leaves, std::map<AgentIndex, Matching> by_leaver)
      : phi_(std::move(nobody_leaves)), by_leaver_(std::move(by_leaver)) {}

  bool has(Leaver leaver) const { return !leaver || by_leaver_.contains(*leaver); }
  // Throws PreconditionError when missing.
  const Matching& of(Leaver leaver) const;

  const Matching& phi() const { return phi_; }
  const std::map<AgentIndex, Matching>& by_leaver() const { return by_leaver_; }

 private:
  Matching phi_;
  std::map<AgentIndex, Matching> by_leaver_;
};

// Parameters of the robust objective. Construction validates that nu lies in
// [0, 1] and that baselines exist for nobody-leaves and for exactly the agents
// with positive departure probability.
class ObjectiveParams {
 public:
  ObjectiveParams(Rational nu, LeaveDistribution leave, ConventionPair conventions, BaselineSet baselines);

  const Rational& nu() const { return nu_; }
  const LeaveDistribution& leave() const { return leave_; }
  const ConventionPair& conventions() const { return conventions_; }
  const BaselineSet& baselines() const { return baselines_; }

  // Departure events with positive probability: nobody first (when
  // p_phi > 0), then agents ascending.
  const std::vector<Leaver>& events() const { return events_; }
  const Rational& probability(Leaver leaver) const {
    return leaver ? leave_.p(*leaver) : leave_.p_phi();
  }

 private:
  Rational nu_;
  LeaveDistribution leave_;
  ConventionPair conventions_;
  BaselineSet baselines_;
  std::vector<Leaver> events_;
};

// Cost charged to `agent` under `matching` after `leaver` departs.
// Throws PreconditionError when agent == leaver.
Rational displayed_cost(const Instance& instance, const Matching& matching, Leaver leaver, AgentIndex agent,
                        Convention convention);

// Contribution of one remaining agent paired with `partner` for one
// departure event, before weighting by the event's probability:
//   nu * d^2 + (1 - nu) * (r - b)^2
// with d, r the displayed costs under the two conventions and b the agent's
// cost in the event's baseline.
Rational agent_term(const Instance& instance, AgentIndex agent, AgentIndex partner, Leaver leaver,
                    const ObjectiveParams& params);

struct PsiTerm {
  Leaver leaver;
  Rational probability;
  // Already weighted by probability.
  Rational contribution;
};

struct PsiBreakdown {
  Rational total;
  std::vector<PsiTerm> terms;
};

PsiBreakdown psi_breakdown(const Instance& instance, const Matching& matching, const ObjectiveParams& params);
Rational psi(const Instance& instance, const Matching& matching, const ObjectiveParams& params);

// Expected number of blocking pairs left behind by a departure: the leaver's
// partner becomes single, everybody else keeps their partner.
Rational expected_blocking_pairs(const Instance& instance, const Matching& matching, const LeaveDistribution& leave);

// Blocking pairs among the remaining agents when `leaver` departs.
int blocking_pairs_after(const Instance& instance, const Matching& matching, Leaver leaver);

}  // namespace robustmatch

#endif  // ROBUSTMATCH_OBJECTIVE_HPP_
