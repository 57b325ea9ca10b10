#include "robustmatch/relaxed_opt.hpp"

#include "robustmatch/error.hpp"

namespace robustmatch {

namespace {

// Expected contribution of `agent` when paired with `partner`, summed over
// every departure event in which the agent stays.
Rational expected_agent_term(const Instance& instance, AgentIndex agent, AgentIndex partner,
                             const ObjectiveParams& params) {
  Rational sum = 0;
  for (const Leaver& leaver : params.events()) {
    if (leaver && *leaver == agent) continue;
    sum += params.probability(leaver) * agent_term(instance, agent, partner, leaver, params);
  }
  return sum;
}

}  // namespace

std::optional<Rational> pair_cost_f(const Instance& instance, AgentIndex a, AgentIndex b,
                                    const ObjectiveParams& params) {
  if (a == b) return 2 * expected_agent_term(instance, a, a, params);
  if (!instance.opposite(a, b)) return std::nullopt;
  return expected_agent_term(instance, a, b, params) + expected_agent_term(instance, b, a, params);
}

AssignmentCosts build_assignment_costs(const Instance& instance, const ObjectiveParams& params) {
  AssignmentCosts costs(instance.size());
  for (AgentIndex a = 0; a < instance.size(); ++a) {
    costs.set(a, a, pair_cost_f(instance, a, a, params));
    for (AgentIndex b = a + 1; b < instance.size(); ++b) {
      auto f = pair_cost_f(instance, a, b, params);
      costs.set(a, b, f);
      costs.set(b, a, std::move(f));
    }
  }
  return costs;
}

Assignment solve_assignment(const AssignmentCosts& costs) {
  const int n = costs.size();
  // Clear denominators so the inner loop runs on integers.
  Integer scale = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (costs.finite(i, j)) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), costs.at(i, j)->get_den_mpz_t());
  std::vector<Integer> a(static_cast<size_t>(n) * static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (costs.finite(i, j)) {
        Rational scaled = *costs.at(i, j) * scale;
        a[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)] = scaled.get_num();
      }
  auto cell = [&](int i, int j) -> const Integer& {
    return a[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)];
  };

  // 1-based rows/columns; column 0 is the virtual start of each search.
  const auto sz = static_cast<size_t>(n) + 1;
  std::vector<Integer> u(sz, 0), v(sz, 0), minv(sz);
  std::vector<bool> min_finite(sz), used(sz);
  std::vector<int> p(sz, 0), way(sz, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(min_finite.begin(), min_finite.end(), false);
    std::fill(used.begin(), used.end(), false);
    do {
      used[static_cast<size_t>(j0)] = true;
      const int i0 = p[static_cast<size_t>(j0)];
      bool have_delta = false;
      Integer delta;
      int j1 = -1;
      for (int j = 1; j <= n; ++j) {
        const auto uj = static_cast<size_t>(j);
        if (used[uj]) continue;
        if (costs.finite(i0 - 1, j - 1)) {
          Integer cur = cell(i0 - 1, j - 1) - u[static_cast<size_t>(i0)] - v[uj];
          if (!min_finite[uj] || cur < minv[uj]) {
            minv[uj] = cur;
            min_finite[uj] = true;
            way[uj] = j0;
          }
        }
        if (min_finite[uj] && (!have_delta || minv[uj] < delta)) {
          delta = minv[uj];
          have_delta = true;
          j1 = j;
        }
      }
      if (!have_delta) throw PreconditionError("no finite assignment exists");
      for (int j = 0; j <= n; ++j) {
        const auto uj = static_cast<size_t>(j);
        if (used[uj]) {
          u[static_cast<size_t>(p[uj])] += delta;
          v[uj] -= delta;
        } else if (min_finite[uj]) {
          minv[uj] -= delta;
        }
      }
      j0 = j1;
    } while (p[static_cast<size_t>(j0)] != 0);
    do {
      int j1 = way[static_cast<size_t>(j0)];
      p[static_cast<size_t>(j0)] = p[static_cast<size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }

  Assignment out;
  out.permutation.assign(static_cast<size_t>(n), -1);
  for (int j = 1; j <= n; ++j) out.permutation[static_cast<size_t>(p[static_cast<size_t>(j)] - 1)] = j - 1;
  out.total = 0;
  for (int i = 0; i < n; ++i) {
    const auto& c = costs.at(i, out.permutation[static_cast<size_t>(i)]);
    if (!c) throw InvariantError("assignment used a forbidden cell");
    out.total += *c;
  }
  return out;
}

Matching symmetrize(std::span<const int> permutation, const AssignmentCosts& costs) {
  const int n = static_cast<int>(permutation.size());
  Matching out = Matching::singles(n);
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (int start = 0; start < n; ++start) {
    if (seen[static_cast<size_t>(start)]) continue;
    std::vector<int> cycle;
    for (int v = start; !seen[static_cast<size_t>(v)]; v = permutation[static_cast<size_t>(v)]) {
      seen[static_cast<size_t>(v)] = true;
      cycle.push_back(v);
    }
    if (cycle.size() == 1) continue;
    if (cycle.size() % 2 != 0) throw PreconditionError("odd permutation cycle; assignment is not finite");
    // Pairing A: (c0 c1)(c2 c3)...; pairing B: (c1 c2)...(c_{k-1} c0).
    Rational cost_a = 0, cost_b = 0;
    const size_t k = cycle.size();
    for (size_t i = 0; i < k; ++i) {
      const auto& f = costs.at(cycle[i], cycle[(i + 1) % k]);
      if (!f) throw PreconditionError("permutation uses a forbidden cell");
      (i % 2 == 0 ? cost_a : cost_b) += *f;
    }
    const size_t offset = cost_a <= cost_b ? 0 : 1;
    for (size_t i = offset; i < k; i += 2) out.set_pair(cycle[i], cycle[(i + 1) % k]);
  }
  return out;
}

RobustSolution solve_relaxed(const Instance& instance, const ObjectiveParams& params) {
  AssignmentCosts costs = build_assignment_costs(instance, params);
  Assignment assignment = solve_assignment(costs);
  RobustSolution out;
  out.mode = SolveMode::kRelaxed;
  out.matching = symmetrize(assignment.permutation, costs);
  out.breakdown = psi_breakdown(instance, out.matching, params);
  out.psi = out.breakdown.total;
  if (2 * out.psi != assignment.total) throw InvariantError("relaxed matching does not attain the assignment optimum");
  return out;
}

RobustSolution solve_relaxed(const Instance& instance, const Rational& nu, const LeaveDistribution& leave,
                             ConventionPair conventions) {
  ObjectiveParams params(nu, leave, conventions, compute_baselines(instance, leave));
  return solve_relaxed(instance, params);
}

}  // namespace robustmatch
