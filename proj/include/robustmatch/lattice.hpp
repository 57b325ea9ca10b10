#ifndef ROBUSTMATCH_LATTICE_HPP_
#define ROBUSTMATCH_LATTICE_HPP_

#include <span>
#include <utility>
#include <vector>

#include "robustmatch/instance.hpp"

namespace robustmatch {

enum class Side { kMen, kWomen };

using Pair = std::pair<AgentIndex, AgentIndex>;  // (man, woman)

// Per-agent reduced candidate lists over the opposite sex. A pair is either
// present in both the man's and the woman's list or in neither.
//
// After men-proposing deferred acceptance, and after any sequence of rotation
// eliminations, each matched man's first entry is his current partner and
// each matched woman's last entry is hers.
class Shortlists {
 public:
  Shortlists() = default;
  // All mutually acceptable pairs present, nothing deleted yet.
  explicit Shortlists(const Instance& instance);

  int size() const { return size_; }
  int num_men() const { return num_men_; }

  bool contains(AgentIndex man, AgentIndex woman) const { return alive_[flat(man, woman)] != 0; }
  // Present candidates of `agent` in its preference order.
  std::vector<AgentIndex> entries(AgentIndex agent) const;

  // -1 when the list has fewer entries.
  AgentIndex first(AgentIndex man) const;
  AgentIndex second(AgentIndex man) const;
  AgentIndex last(AgentIndex woman) const;

  // Pairing implied by the lists: each man with a non-empty list is matched
  // to his first entry.
  Matching current_matching() const;

  // Mutual deletion. No-op if already absent.
  void remove(AgentIndex man, AgentIndex woman);
  // Deletes every candidate of `woman` that she ranks below `man`; returns
  // the deleted pairs.
  std::vector<Pair> remove_below(AgentIndex woman, AgentIndex man);
  // Same with roles swapped (used by women-proposing deferred acceptance).
  std::vector<Pair> remove_below_for_man(AgentIndex man, AgentIndex woman);

  friend bool operator==(const Shortlists&, const Shortlists&) = default;

 private:
  size_t flat(AgentIndex man, AgentIndex woman) const {
    return static_cast<size_t>(man) * static_cast<size_t>(size_ - num_men_) + static_cast<size_t>(woman - num_men_);
  }
  void settle(AgentIndex man, AgentIndex woman);

  int size_ = 0;
  int num_men_ = 0;
  // Mutually acceptable opposite-sex candidates, in preference order.
  std::vector<std::vector<AgentIndex>> order_;
  // Position of a candidate in the owner's order_ list; -1 if absent.
  std::vector<std::vector<int>> position_;
  std::vector<char> alive_;
  // Men: index of first present entry. Women: index of last present entry.
  std::vector<int> cursor_;
};

struct DeferredAcceptance {
  Matching matching;
  Shortlists shortlists;
};

// Side-optimal stable matching. Whenever an agent of the receiving side holds
// a proposal, every candidate it ranks below the proposer is deleted from the
// lists, so rejected proposers disappear as well.
DeferredAcceptance propose_da(const Instance& instance, Side side);

struct Rotation {
  // Cyclic (man, woman) pairs; eliminating moves pairs[i].first to
  // pairs[i + 1].second. Starts at the smallest man.
  std::vector<Pair> pairs;
  int index = -1;

  AgentIndex man(size_t i) const { return pairs[i].first; }
  AgentIndex woman(size_t i) const { return pairs[i].second; }
  AgentIndex next_woman(size_t i) const { return pairs[(i + 1) % pairs.size()].second; }
  // Members of the rotation: all its men and women.
  std::vector<AgentIndex> agents() const;

  friend bool operator==(const Rotation& a, const Rotation& b) { return a.pairs == b.pairs; }
};

// Rotations exposed in `lists`: man i's first entry is woman i and his second
// is woman i + 1. Each reported once, sorted by smallest man. Index unset.
std::vector<Rotation> exposed_rotations(const Shortlists& lists);

// Rematches pairs[i].first with pairs[i + 1].second and deletes, for each such
// woman, every man she now ranks below her new partner. Returns the deleted
// pairs. Throws PreconditionError when `rotation` is not exposed.
std::vector<Pair> eliminate_rotation(Shortlists& lists, const Rotation& rotation);

// Applies `rotation` to a plain matching without list bookkeeping.
Matching apply_rotation(Matching matching, const Rotation& rotation);

// (man, woman) -> rotation index, -1 for none.
class PairTable {
 public:
  PairTable() = default;
  explicit PairTable(const Instance& instance)
      : num_men_(instance.num_men()),
        num_women_(instance.num_women()),
        cells_(static_cast<size_t>(num_men_) * static_cast<size_t>(num_women_), -1) {}

  int at(AgentIndex man, AgentIndex woman) const { return cells_[flat(man, woman)]; }
  void set(AgentIndex man, AgentIndex woman, int value) { cells_[flat(man, woman)] = value; }

 private:
  size_t flat(AgentIndex man, AgentIndex woman) const {
    return static_cast<size_t>(man) * static_cast<size_t>(num_women_) + static_cast<size_t>(woman - num_men_);
  }
  int num_men_ = 0;
  int num_women_ = 0;
  std::vector<int> cells_;
};

struct RotationEnumeration {
  std::vector<Rotation> rotations;
  Matching men_optimal;
  Matching women_optimal;
  // Lists right after men-proposing deferred acceptance.
  Shortlists initial;
  // Rotation that pairs the man with the woman.
  PairTable move_to;
  // Rotation that moves the man away from the woman.
  PairTable move_from;
  // Rotation whose elimination deleted the pair from the lists.
  PairTable removed_by;
};

// Every rotation exactly once, found along one maximal elimination chain from
// the men-optimal to the women-optimal matching. Ordered by smallest man,
// then discovery.
RotationEnumeration enumerate_rotations(const Instance& instance);

// Sparse precedence graph: an edge a -> b means a must be eliminated before b.
class RotationDigraph {
 public:
  RotationDigraph() = default;
  RotationDigraph(int num_nodes, std::vector<std::pair<int, int>> edges);

  int num_nodes() const { return static_cast<int>(out_.size()); }
  // Sorted, without duplicates.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& successors(int node) const { return out_[static_cast<size_t>(node)]; }
  const std::vector<int>& predecessors(int node) const { return in_[static_cast<size_t>(node)]; }
  const std::vector<int>& topological_order() const { return topo_; }

  bool is_closed(std::span<const int> subset) const;
  // Smallest closed set containing `subset`.
  std::vector<int> closure(std::span<const int> subset) const;
  // reach[a][b]: b reachable from a through at least one edge.
  std::vector<std::vector<bool>> transitive_closure() const;

 private:
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  std::vector<int> topo_;
};

RotationDigraph build_rotation_digraph(const Instance& instance, const RotationEnumeration& rotations);
RotationDigraph build_rotation_digraph(const Instance& instance);

// Rotation structure of one instance, built once and reused.
struct Lattice {
  RotationEnumeration rotations;
  RotationDigraph digraph;

  static Lattice build(const Instance& instance);
  int size() const { return static_cast<int>(rotations.rotations.size()); }
};

// Stable matching reached from the men-optimal matching by eliminating the
// rotations of a closed subset in topological order. Throws PreconditionError
// when the subset is not closed.
Matching matching_of_closed_subset(const Lattice& lattice, std::span<const int> subset);
// Same, eliminating in the caller's order, which must respect precedence.
Matching matching_of_elimination_order(const Lattice& lattice, std::span<const int> order);

}  // namespace robustmatch

#endif  // ROBUSTMATCH_LATTICE_HPP_
