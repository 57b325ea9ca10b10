#ifndef ROBUSTMATCH_INSTANCE_HPP_
#define ROBUSTMATCH_INSTANCE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "robustmatch/rational.hpp"

namespace robustmatch {

enum class Sex : std::uint8_t { kMan, kWoman };

std::string_view to_string(Sex sex);

// Dense index of an agent inside one Instance. Men occupy [0, num_men()),
// women [num_men(), size()), each side sorted by id.
using AgentIndex = int;

struct Agent {
  std::string id;
  Sex sex = Sex::kMan;
};

struct CostEntry {
  std::string candidate;
  Rational cost;
};

// A two-sided market with strict nonnegative costs over the opposite sex and
// self. Lower cost is better; self is always a candidate, so a partner is
// acceptable to an agent iff it costs less than staying single.
//
// Immutable after construction.
class Instance {
 public:
  // Validates and canonicalizes. `costs` maps each agent id to its complete
  // candidate table (every opposite-sex agent plus itself, each exactly once).
  // Throws InputError on duplicate ids, missing or unknown candidates,
  // negative costs or ties.
  static Instance create(std::vector<std::string> men, std::vector<std::string> women,
                         const std::unordered_map<std::string, std::vector<CostEntry>>& costs);

  int size() const { return static_cast<int>(agents_.size()); }
  int num_men() const { return num_men_; }
  int num_women() const { return size() - num_men_; }

  const Agent& agent(AgentIndex a) const { return agents_[static_cast<size_t>(a)]; }
  const std::string& id(AgentIndex a) const { return agent(a).id; }
  Sex sex(AgentIndex a) const { return a < num_men_ ? Sex::kMan : Sex::kWoman; }
  bool is_man(AgentIndex a) const { return a < num_men_; }
  bool opposite(AgentIndex a, AgentIndex b) const { return is_man(a) != is_man(b); }
  bool contains(AgentIndex a) const { return a >= 0 && a < size(); }

  std::optional<AgentIndex> find(std::string_view id) const;
  // Throws InputError when the id is unknown.
  AgentIndex index_of(std::string_view id) const;

  // Defined for opposite-sex pairs and for a == b.
  const Rational& cost(AgentIndex a, AgentIndex b) const {
    return costs_[static_cast<size_t>(a) * static_cast<size_t>(size()) + static_cast<size_t>(b)];
  }
  bool has_cost(AgentIndex a, AgentIndex b) const { return a == b || opposite(a, b); }

  // Position of b in a's preference order (0 = most preferred).
  int rank(AgentIndex a, AgentIndex b) const {
    return ranks_[static_cast<size_t>(a) * static_cast<size_t>(size()) + static_cast<size_t>(b)];
  }
  bool prefers(AgentIndex a, AgentIndex x, AgentIndex y) const { return rank(a, x) < rank(a, y); }
  bool acceptable(AgentIndex a, AgentIndex b) const { return rank(a, b) < rank(a, a); }

  // Candidates of `a` by strictly increasing cost, self included.
  std::span<const AgentIndex> preferences(AgentIndex a) const {
    return preferences_[static_cast<size_t>(a)];
  }

  std::vector<AgentIndex> men() const;
  std::vector<AgentIndex> women() const;

  friend bool operator==(const Instance& lhs, const Instance& rhs);

 private:
  Instance() = default;

  std::vector<Agent> agents_;
  int num_men_ = 0;
  std::unordered_map<std::string, AgentIndex> index_;
  std::vector<Rational> costs_;
  std::vector<int> ranks_;
  std::vector<std::vector<AgentIndex>> preferences_;
};

// Probability that nobody leaves plus per-agent departure probabilities.
// Sums to exactly one.
class LeaveDistribution {
 public:
  // Throws InputError unless every value lies in [0, 1], the vector matches
  // the instance size and the total is exactly 1.
  LeaveDistribution(Rational p_phi, std::vector<Rational> p);

  static LeaveDistribution nobody_leaves(int num_agents);

  const Rational& p_phi() const { return p_phi_; }
  const Rational& p(AgentIndex a) const { return p_[static_cast<size_t>(a)]; }
  int size() const { return static_cast<int>(p_.size()); }

  // Agents with strictly positive departure probability, ascending.
  std::vector<AgentIndex> possible_leavers() const;

  friend bool operator==(const LeaveDistribution&, const LeaveDistribution&) = default;

 private:
  Rational p_phi_;
  std::vector<Rational> p_;
};

// Sex-respecting involution over the agents of one instance; self-matching
// means single.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::vector<AgentIndex> partner) : partner_(std::move(partner)) {}

  // Everybody single.
  static Matching singles(int num_agents);
  // Unlisted agents stay single. Throws InputError on conflicting pairs.
  static Matching from_pairs(int num_agents, std::span<const std::pair<AgentIndex, AgentIndex>> pairs);

  AgentIndex partner(AgentIndex a) const { return partner_[static_cast<size_t>(a)]; }
  bool is_single(AgentIndex a) const { return partner(a) == a; }
  int size() const { return static_cast<int>(partner_.size()); }
  std::span<const AgentIndex> partners() const { return partner_; }

  void set_pair(AgentIndex a, AgentIndex b) {
    partner_[static_cast<size_t>(a)] = b;
    partner_[static_cast<size_t>(b)] = a;
  }

  // (man, woman) pairs sorted by man index.
  std::vector<std::pair<AgentIndex, AgentIndex>> couples(const Instance& instance) const;

  friend bool operator==(const Matching&, const Matching&) = default;
  friend auto operator<=>(const Matching&, const Matching&) = default;

 private:
  std::vector<AgentIndex> partner_;
};

// Throws InputError unless `matching` is an involution over exactly the
// instance's agents that pairs only opposite sexes.
void validate_matching(const Instance& instance, const Matching& matching);

struct BlockingPair {
  AgentIndex man;
  AgentIndex woman;
  friend bool operator==(const BlockingPair&, const BlockingPair&) = default;
};

struct StabilityReport {
  bool stable = false;
  // Agents whose partner costs more than staying single.
  std::vector<AgentIndex> individually_irrational;
  // Ordered by (man id, woman id).
  std::vector<BlockingPair> blocking_pairs;
};

StabilityReport check_stability(const Instance& instance, const Matching& matching);
inline bool is_stable(const Instance& instance, const Matching& matching) {
  return check_stability(instance, matching).stable;
}

// Copy of `instance` without `leaver`; every other cost is unchanged.
// Throws InputError when `leaver` is not an agent of the instance.
Instance remove_agent(const Instance& instance, AgentIndex leaver);
Instance remove_agent(const Instance& instance, std::string_view leaver_id);

// Re-express a matching of `from` on the agents of `to`, by id. Agents of
// `to` that are missing in `from`, or whose partner is missing, stay single.
Matching translate_matching(const Instance& from, const Matching& matching, const Instance& to);

}  // namespace robustmatch

#endif  // ROBUSTMATCH_INSTANCE_HPP_
