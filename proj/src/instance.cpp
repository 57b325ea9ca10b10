#include "robustmatch/instance.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "robustmatch/error.hpp"

namespace robustmatch {

std::string_view to_string(Sex sex) { return sex == Sex::kMan ? "man" : "woman"; }

Instance Instance::create(std::vector<std::string> men, std::vector<std::string> women,
                          const std::unordered_map<std::string, std::vector<CostEntry>>& costs) {
  std::sort(men.begin(), men.end());
  std::sort(women.begin(), women.end());

  Instance inst;
  inst.num_men_ = static_cast<int>(men.size());
  for (auto& id : men) inst.agents_.push_back({std::move(id), Sex::kMan});
  for (auto& id : women) inst.agents_.push_back({std::move(id), Sex::kWoman});

  const int n = inst.size();
  for (AgentIndex a = 0; a < n; ++a) {
    if (inst.agents_[static_cast<size_t>(a)].id.empty()) throw InputError("empty agent id");
    if (!inst.index_.emplace(inst.agents_[static_cast<size_t>(a)].id, a).second)
      throw InputError("duplicate agent id: " + inst.agents_[static_cast<size_t>(a)].id);
  }
  for (const auto& [id, table] : costs) {
    if (!inst.index_.contains(id)) throw InputError("cost table for unknown agent: " + id);
  }

  const auto nn = static_cast<size_t>(n);
  inst.costs_.assign(nn * nn, Rational(0));
  inst.ranks_.assign(nn * nn, -1);
  inst.preferences_.resize(nn);

  for (AgentIndex a = 0; a < n; ++a) {
    const std::string& id = inst.id(a);
    auto it = costs.find(id);
    if (it == costs.end()) throw InputError("missing cost table for agent " + id);

    std::vector<bool> seen(nn, false);
    for (const CostEntry& entry : it->second) {
      auto b = inst.find(entry.candidate);
      if (!b) throw InputError("agent " + id + " lists unknown candidate " + entry.candidate);
      if (!inst.has_cost(a, *b))
        throw InputError("agent " + id + " lists same-sex candidate " + entry.candidate);
      if (seen[static_cast<size_t>(*b)])
        throw InputError("agent " + id + " lists candidate " + entry.candidate + " twice");
      if (entry.cost < 0) throw InputError("agent " + id + " has a negative cost");
      seen[static_cast<size_t>(*b)] = true;
      inst.costs_[static_cast<size_t>(a) * nn + static_cast<size_t>(*b)] = entry.cost;
    }

    auto& prefs = inst.preferences_[static_cast<size_t>(a)];
    for (AgentIndex b = 0; b < n; ++b) {
      if (!inst.has_cost(a, b)) continue;
      if (!seen[static_cast<size_t>(b)])
        throw InputError("agent " + id + " has no cost for candidate " + inst.id(b));
      prefs.push_back(b);
    }
    std::stable_sort(prefs.begin(), prefs.end(),
                     [&](AgentIndex x, AgentIndex y) { return inst.cost(a, x) < inst.cost(a, y); });
    for (size_t k = 0; k < prefs.size(); ++k) {
      if (k > 0 && inst.cost(a, prefs[k]) == inst.cost(a, prefs[k - 1]))
        throw InputError("agent " + id + " has tied costs for " + inst.id(prefs[k - 1]) + " and " +
                         inst.id(prefs[k]));
      inst.ranks_[static_cast<size_t>(a) * nn + static_cast<size_t>(prefs[k])] = static_cast<int>(k);
    }
  }
  return inst;
}

std::optional<AgentIndex> Instance::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

AgentIndex Instance::index_of(std::string_view id) const {
  auto a = find(id);
  if (!a) throw InputError("unknown agent: " + std::string(id));
  return *a;
}

std::vector<AgentIndex> Instance::men() const {
  std::vector<AgentIndex> out(static_cast<size_t>(num_men_));
  std::iota(out.begin(), out.end(), 0);
  return out;
}

std::vector<AgentIndex> Instance::women() const {
  std::vector<AgentIndex> out(static_cast<size_t>(num_women()));
  std::iota(out.begin(), out.end(), num_men_);
  return out;
}

bool operator==(const Instance& lhs, const Instance& rhs) {
  if (lhs.num_men_ != rhs.num_men_ || lhs.agents_.size() != rhs.agents_.size()) return false;
  for (size_t i = 0; i < lhs.agents_.size(); ++i)
    if (lhs.agents_[i].id != rhs.agents_[i].id) return false;
  return lhs.costs_ == rhs.costs_;
}

// ---------------------------------------------------------------------------

LeaveDistribution::LeaveDistribution(Rational p_phi, std::vector<Rational> p)
    : p_phi_(std::move(p_phi)), p_(std::move(p)) {
  Rational total = p_phi_;
  if (p_phi_ < 0 || p_phi_ > 1) throw InputError("p_phi outside [0, 1]");
  for (const Rational& q : p_) {
    if (q < 0 || q > 1) throw InputError("departure probability outside [0, 1]");
    total += q;
  }
  if (total != 1) throw InputError("leave probabilities sum to " + to_string(total) + ", not 1");
}

LeaveDistribution LeaveDistribution::nobody_leaves(int num_agents) {
  return LeaveDistribution(Rational(1), std::vector<Rational>(static_cast<size_t>(num_agents), Rational(0)));
}

std::vector<AgentIndex> LeaveDistribution::possible_leavers() const {
  std::vector<AgentIndex> out;
  for (AgentIndex a = 0; a < size(); ++a)
    if (p(a) > 0) out.push_back(a);
  return out;
}

// ---------------------------------------------------------------------------

Matching Matching::singles(int num_agents) {
  std::vector<AgentIndex> partner(static_cast<size_t>(num_agents));
  std::iota(partner.begin(), partner.end(), 0);
  return Matching(std::move(partner));
}

Matching Matching::from_pairs(int num_agents, std::span<const std::pair<AgentIndex, AgentIndex>> pairs) {
  Matching m = singles(num_agents);
  std::vector<bool> used(static_cast<size_t>(num_agents), false);
  for (auto [a, b] : pairs) {
    if (a < 0 || b < 0 || a >= num_agents || b >= num_agents) throw InputError("pair references unknown agent");
    if (a == b) continue;
    if (used[static_cast<size_t>(a)] || used[static_cast<size_t>(b)])
      throw InputError("agent appears in more than one pair");
    used[static_cast<size_t>(a)] = used[static_cast<size_t>(b)] = true;
    m.set_pair(a, b);
  }
  return m;
}

std::vector<std::pair<AgentIndex, AgentIndex>> Matching::couples(const Instance& instance) const {
  std::vector<std::pair<AgentIndex, AgentIndex>> out;
  for (AgentIndex m = 0; m < instance.num_men(); ++m)
    if (!is_single(m)) out.emplace_back(m, partner(m));
  return out;
}

void validate_matching(const Instance& instance, const Matching& matching) {
  if (matching.size() != instance.size())
    throw InputError("matching covers " + std::to_string(matching.size()) + " agents, instance has " +
                     std::to_string(instance.size()));
  for (AgentIndex a = 0; a < instance.size(); ++a) {
    AgentIndex b = matching.partner(a);
    if (!instance.contains(b)) throw InputError("matching references an agent outside the instance");
    if (matching.partner(b) != a) throw InputError("matching is not an involution at " + instance.id(a));
    if (b != a && !instance.opposite(a, b))
      throw InputError("matching pairs same-sex agents " + instance.id(a) + " and " + instance.id(b));
  }
}

StabilityReport check_stability(const Instance& instance, const Matching& matching) {
  validate_matching(instance, matching);
  StabilityReport report;
  for (AgentIndex a = 0; a < instance.size(); ++a)
    if (instance.prefers(a, a, matching.partner(a))) report.individually_irrational.push_back(a);
  for (AgentIndex m = 0; m < instance.num_men(); ++m) {
    for (AgentIndex w = instance.num_men(); w < instance.size(); ++w) {
      if (instance.prefers(m, w, matching.partner(m)) && instance.prefers(w, m, matching.partner(w)))
        report.blocking_pairs.push_back({m, w});
    }
  }
  report.stable = report.individually_irrational.empty() && report.blocking_pairs.empty();
  return report;
}

Instance remove_agent(const Instance& instance, AgentIndex leaver) {
  if (!instance.contains(leaver)) throw InputError("agent to remove is not in the instance");
  std::vector<std::string> men, women;
  std::unordered_map<std::string, std::vector<CostEntry>> costs;
  for (AgentIndex a = 0; a < instance.size(); ++a) {
    if (a == leaver) continue;
    (instance.is_man(a) ? men : women).push_back(instance.id(a));
    auto& table = costs[instance.id(a)];
    for (AgentIndex b : instance.preferences(a))
      if (b != leaver) table.push_back({instance.id(b), instance.cost(a, b)});
  }
  return Instance::create(std::move(men), std::move(women), costs);
}

Instance remove_agent(const Instance& instance, std::string_view leaver_id) {
  auto a = instance.find(leaver_id);
  if (!a) throw InputError("agent to remove is not in the instance: " + std::string(leaver_id));
  return remove_agent(instance, *a);
}

Matching translate_matching(const Instance& from, const Matching& matching, const Instance& to) {
  Matching out = Matching::singles(to.size());
  for (AgentIndex a = 0; a < to.size(); ++a) {
    auto src = from.find(to.id(a));
    if (!src) continue;
    auto dst = to.find(from.id(matching.partner(*src)));
    if (dst && *dst != a) out.set_pair(a, *dst);
  }
  return out;
}

}  // namespace robustmatch
