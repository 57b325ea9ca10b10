#include "robustmatch/oracle.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "robustmatch/error.hpp"

namespace robustmatch::oracle {

namespace {

void extend(const Instance& instance, AgentIndex man, Matching& current, std::vector<bool>& taken,
            std::vector<Matching>& out) {
  if (man == instance.num_men()) {
    out.push_back(current);
    return;
  }
  extend(instance, man + 1, current, taken, out);
  for (AgentIndex w = instance.num_men(); w < instance.size(); ++w) {
    if (taken[static_cast<size_t>(w)]) continue;
    taken[static_cast<size_t>(w)] = true;
    current.set_pair(man, w);
    extend(instance, man + 1, current, taken, out);
    current.set_pair(man, man);
    current.set_pair(w, w);
    taken[static_cast<size_t>(w)] = false;
  }
}

// Every man weakly prefers his partner in `upper` to his partner in `lower`.
bool dominates(const Instance& instance, const Matching& upper, const Matching& lower) {
  for (AgentIndex m = 0; m < instance.num_men(); ++m)
    if (instance.prefers(m, lower.partner(m), upper.partner(m))) return false;
  return true;
}

}  // namespace

std::vector<Matching> enumerate_matchings(const Instance& instance, int max_agents) {
  if (instance.size() > max_agents) throw PreconditionError("instance too large for brute-force enumeration");
  std::vector<Matching> out;
  Matching current = Matching::singles(instance.size());
  std::vector<bool> taken(static_cast<size_t>(instance.size()), false);
  extend(instance, 0, current, taken, out);
  return out;
}

std::vector<Matching> enumerate_stable_matchings(const Instance& instance, int max_agents) {
  std::vector<Matching> out;
  for (Matching& m : enumerate_matchings(instance, max_agents))
    if (check_stability(instance, m).stable) out.push_back(std::move(m));
  return out;
}

BruteResult brute_solve(const Instance& instance, const ObjectiveParams& params, Domain domain, int max_agents) {
  auto candidates = domain == Domain::kStable ? enumerate_stable_matchings(instance, max_agents)
                                              : enumerate_matchings(instance, max_agents);
  if (candidates.empty()) throw InvariantError("no candidate matchings");
  std::optional<BruteResult> best;
  for (Matching& m : candidates) {
    Rational value = psi(instance, m, params);
    if (!best || value < best->psi) best = BruteResult{std::move(m), std::move(value)};
  }
  return std::move(*best);
}

int PosetOracle::find(const PairSet& pairs) const {
  auto it = std::find(rotations.begin(), rotations.end(), pairs);
  return it == rotations.end() ? -1 : static_cast<int>(it - rotations.begin());
}

PosetOracle poset_oracle(const Instance& instance, int max_per_side) {
  if (instance.num_men() > max_per_side || instance.num_women() > max_per_side)
    throw PreconditionError("instance too large for the poset oracle");
  auto stable = enumerate_stable_matchings(instance, 2 * max_per_side);
  const size_t k = stable.size();

  // Men-dominance order and its covering relation.
  std::vector<std::vector<bool>> below(k, std::vector<bool>(k, false));  // below[a][b]: b strictly below a
  for (size_t a = 0; a < k; ++a)
    for (size_t b = 0; b < k; ++b)
      below[a][b] = a != b && dominates(instance, stable[a], stable[b]);

  size_t top = k;
  for (size_t a = 0; a < k; ++a) {
    size_t count = 0;
    for (size_t b = 0; b < k; ++b) count += below[a][b] ? 1 : 0;
    if (count + 1 == k) top = a;
  }
  if (top == k) throw InvariantError("stable matchings have no men-optimal element");

  PosetOracle out;
  std::vector<std::optional<std::set<int>>> sets(k);
  sets[top] = std::set<int>{};
  std::queue<size_t> queue;
  queue.push(top);
  while (!queue.empty()) {
    size_t a = queue.front();
    queue.pop();
    for (size_t b = 0; b < k; ++b) {
      if (!below[a][b]) continue;
      bool covers = true;
      for (size_t c = 0; c < k && covers; ++c)
        if (below[a][c] && below[c][b]) covers = false;
      if (!covers) continue;

      PairSet broken;
      for (AgentIndex m = 0; m < instance.num_men(); ++m)
        if (stable[a].partner(m) != stable[b].partner(m)) broken.emplace_back(m, stable[a].partner(m));
      int id = out.find(broken);
      if (id < 0) {
        id = static_cast<int>(out.rotations.size());
        out.rotations.push_back(broken);
      }
      std::set<int> next = *sets[a];
      next.insert(id);
      if (!sets[b]) {
        sets[b] = std::move(next);
        queue.push(b);
      } else if (*sets[b] != next) {
        throw InvariantError("two paths reach a stable matching through different rotations");
      }
    }
  }

  for (size_t a = 0; a < k; ++a) {
    if (!sets[a]) throw InvariantError("stable matching unreachable from the men-optimal one");
    out.eliminated.emplace_back(stable[a], *sets[a]);
  }
  const int r = static_cast<int>(out.rotations.size());
  for (int x = 0; x < r; ++x) {
    for (int y = 0; y < r; ++y) {
      if (x == y) continue;
      bool always = true;
      for (const auto& [m, set] : out.eliminated)
        if (set.contains(y) && !set.contains(x)) always = false;
      if (always) out.precedes.emplace(x, y);
    }
  }
  return out;
}

long count_closed_subsets(int num_nodes, const std::set<std::pair<int, int>>& precedes) {
  if (num_nodes > 20) throw PreconditionError("too many nodes to enumerate subsets");
  long count = 0;
  for (unsigned long mask = 0; mask < (1UL << num_nodes); ++mask) {
    bool closed = true;
    for (auto [a, b] : precedes)
      if ((mask >> b & 1UL) && !(mask >> a & 1UL)) closed = false;
    if (closed) ++count;
  }
  return count;
}

}  // namespace robustmatch::oracle
