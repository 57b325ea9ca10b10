#ifndef ROBUSTMATCH_RELAXED_OPT_HPP_
#define ROBUSTMATCH_RELAXED_OPT_HPP_

#include <optional>
#include <vector>

#include "robustmatch/instance.hpp"
#include "robustmatch/objective.hpp"
#include "robustmatch/stable_opt.hpp"

namespace robustmatch {

// Square cost matrix with a distinguished "forbidden" marker (std::nullopt)
// standing for an infinite cost.
class AssignmentCosts {
 public:
  explicit AssignmentCosts(int n) : n_(n), cells_(static_cast<size_t>(n) * static_cast<size_t>(n)) {}

  int size() const { return n_; }
  const std::optional<Rational>& at(int row, int col) const { return cells_[flat(row, col)]; }
  bool finite(int row, int col) const { return at(row, col).has_value(); }
  void set(int row, int col, std::optional<Rational> value) { cells_[flat(row, col)] = std::move(value); }

 private:
  size_t flat(int row, int col) const { return static_cast<size_t>(row) * static_cast<size_t>(n_) + static_cast<size_t>(col); }
  int n_;
  std::vector<std::optional<Rational>> cells_;
};

// Cost of pairing a with b in the assignment encoding of the relaxed problem.
// Forbidden (nullopt) for distinct same-sex agents. For a == b the single
// agent's expected term is doubled, so that summing over any matching read
// as a permutation gives exactly twice its psi.
std::optional<Rational> pair_cost_f(const Instance& instance, AgentIndex a, AgentIndex b,
                                    const ObjectiveParams& params);

AssignmentCosts build_assignment_costs(const Instance& instance, const ObjectiveParams& params);

struct Assignment {
  // permutation[row] = column.
  std::vector<int> permutation;
  Rational total;
};

// Minimum-cost perfect assignment (shortest augmenting paths with exact
// potentials). Forbidden cells are never used. Throws PreconditionError when
// no finite assignment exists.
Assignment solve_assignment(const AssignmentCosts& costs);

// Turns an assignment permutation into a sex-respecting involution: every
// cycle alternates sexes and splits into two perfect pairings, of which the
// cheaper one is kept. Fixed points stay single.
Matching symmetrize(std::span<const int> permutation, const AssignmentCosts& costs);

// Matching minimizing psi over all sex-respecting involutions.
RobustSolution solve_relaxed(const Instance& instance, const Rational& nu, const LeaveDistribution& leave,
                             ConventionPair conventions = {});
RobustSolution solve_relaxed(const Instance& instance, const ObjectiveParams& params);

}  // namespace robustmatch

#endif  // ROBUSTMATCH_RELAXED_OPT_HPP_
