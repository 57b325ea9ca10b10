#include "robustmatch/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "robustmatch/error.hpp"

namespace robustmatch {

// ---------------------------------------------------------------------------
// Shortlists

Shortlists::Shortlists(const Instance& instance)
    : size_(instance.size()),
      num_men_(instance.num_men()),
      order_(static_cast<size_t>(instance.size())),
      position_(static_cast<size_t>(instance.size()), std::vector<int>(static_cast<size_t>(instance.size()), -1)),
      alive_(static_cast<size_t>(instance.num_men()) * static_cast<size_t>(instance.num_women()), 0),
      cursor_(static_cast<size_t>(instance.size()), 0) {
  for (AgentIndex a = 0; a < size_; ++a) {
    auto& order = order_[static_cast<size_t>(a)];
    for (AgentIndex b : instance.preferences(a)) {
      if (b == a) break;
      if (instance.acceptable(b, a)) order.push_back(b);
    }
    for (size_t k = 0; k < order.size(); ++k) position_[static_cast<size_t>(a)][static_cast<size_t>(order[k])] = static_cast<int>(k);
    if (!instance.is_man(a)) cursor_[static_cast<size_t>(a)] = static_cast<int>(order.size()) - 1;
  }
  for (AgentIndex m = 0; m < num_men_; ++m)
    for (AgentIndex w : order_[static_cast<size_t>(m)]) alive_[flat(m, w)] = 1;
}

std::vector<AgentIndex> Shortlists::entries(AgentIndex agent) const {
  std::vector<AgentIndex> out;
  for (AgentIndex b : order_[static_cast<size_t>(agent)]) {
    bool present = agent < num_men_ ? contains(agent, b) : contains(b, agent);
    if (present) out.push_back(b);
  }
  return out;
}

AgentIndex Shortlists::first(AgentIndex man) const {
  const auto& order = order_[static_cast<size_t>(man)];
  int c = cursor_[static_cast<size_t>(man)];
  return c < static_cast<int>(order.size()) ? order[static_cast<size_t>(c)] : -1;
}

AgentIndex Shortlists::second(AgentIndex man) const {
  const auto& order = order_[static_cast<size_t>(man)];
  for (size_t k = static_cast<size_t>(cursor_[static_cast<size_t>(man)]) + 1; k < order.size(); ++k)
    if (contains(man, order[k])) return order[k];
  return -1;
}

AgentIndex Shortlists::last(AgentIndex woman) const {
  int c = cursor_[static_cast<size_t>(woman)];
  return c >= 0 ? order_[static_cast<size_t>(woman)][static_cast<size_t>(c)] : -1;
}

Matching Shortlists::current_matching() const {
  Matching out = Matching::singles(size_);
  for (AgentIndex m = 0; m < num_men_; ++m) {
    AgentIndex w = first(m);
    if (w < 0) continue;
    if (last(w) != m) throw InvariantError("shortlists are not in a men-oriented state");
    out.set_pair(m, w);
  }
  return out;
}

void Shortlists::settle(AgentIndex man, AgentIndex woman) {
  auto& mc = cursor_[static_cast<size_t>(man)];
  const auto& mo = order_[static_cast<size_t>(man)];
  while (mc < static_cast<int>(mo.size()) && !contains(man, mo[static_cast<size_t>(mc)])) ++mc;
  auto& wc = cursor_[static_cast<size_t>(woman)];
  const auto& wo = order_[static_cast<size_t>(woman)];
  while (wc >= 0 && !contains(wo[static_cast<size_t>(wc)], woman)) --wc;
}

void Shortlists::remove(AgentIndex man, AgentIndex woman) {
  if (!contains(man, woman)) return;
  alive_[flat(man, woman)] = 0;
  settle(man, woman);
}

std::vector<Pair> Shortlists::remove_below(AgentIndex woman, AgentIndex man) {
  std::vector<Pair> removed;
  const auto& order = order_[static_cast<size_t>(woman)];
  int pos = position_[static_cast<size_t>(woman)][static_cast<size_t>(man)];
  if (pos < 0) return removed;
  for (int k = pos + 1; k <= cursor_[static_cast<size_t>(woman)]; ++k) {
    AgentIndex loser = order[static_cast<size_t>(k)];
    if (!contains(loser, woman)) continue;
    alive_[flat(loser, woman)] = 0;
    removed.emplace_back(loser, woman);
  }
  for (const auto& [loser, w] : removed) settle(loser, w);
  return removed;
}

std::vector<Pair> Shortlists::remove_below_for_man(AgentIndex man, AgentIndex woman) {
  std::vector<Pair> removed;
  const auto& order = order_[static_cast<size_t>(man)];
  int pos = position_[static_cast<size_t>(man)][static_cast<size_t>(woman)];
  if (pos < 0) return removed;
  for (size_t k = static_cast<size_t>(pos) + 1; k < order.size(); ++k) {
    AgentIndex loser = order[k];
    if (!contains(man, loser)) continue;
    alive_[flat(man, loser)] = 0;
    removed.emplace_back(man, loser);
  }
  for (const auto& [m, loser] : removed) settle(m, loser);
  return removed;
}

// ---------------------------------------------------------------------------
// Deferred acceptance

DeferredAcceptance propose_da(const Instance& instance, Side side) {
  Shortlists lists(instance);
  const bool men_propose = side == Side::kMen;
  const int n = instance.size();

  std::vector<AgentIndex> proposers = men_propose ? instance.men() : instance.women();
  std::vector<size_t> next(static_cast<size_t>(n), 0);
  std::vector<AgentIndex> holder(static_cast<size_t>(n), -1);
  Matching matching = Matching::singles(n);

  std::vector<AgentIndex> free(proposers.rbegin(), proposers.rend());
  while (!free.empty()) {
    AgentIndex p = free.back();
    free.pop_back();
    auto prefs = instance.preferences(p);
    auto& k = next[static_cast<size_t>(p)];
    for (; k < prefs.size() && prefs[k] != p; ++k) {
      AgentIndex r = prefs[k];
      bool present = men_propose ? lists.contains(p, r) : lists.contains(r, p);
      if (present) break;
    }
    if (k >= prefs.size() || prefs[k] == p) continue;  // exhausted: stays single

    AgentIndex r = prefs[k];
    AgentIndex previous = holder[static_cast<size_t>(r)];
    holder[static_cast<size_t>(r)] = p;
    if (men_propose)
      lists.remove_below(r, p);
    else
      lists.remove_below_for_man(r, p);
    if (previous >= 0) free.push_back(previous);
  }

  for (AgentIndex r = 0; r < n; ++r) {
    AgentIndex p = holder[static_cast<size_t>(r)];
    if (p >= 0) matching.set_pair(p, r);
  }
  return {std::move(matching), std::move(lists)};
}

// ---------------------------------------------------------------------------
// Rotations

std::vector<AgentIndex> Rotation::agents() const {
  std::vector<AgentIndex> out;
  for (auto [m, w] : pairs) {
    out.push_back(m);
    out.push_back(w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Rotation> exposed_rotations(const Shortlists& lists) {
  const int num_men = lists.num_men();
  std::vector<AgentIndex> next(static_cast<size_t>(num_men), -1);
  for (AgentIndex m = 0; m < num_men; ++m) {
    AgentIndex w = lists.first(m);
    AgentIndex s = lists.second(m);
    if (w < 0 || s < 0) continue;
    AgentIndex holder = lists.last(s);
    if (holder < 0 || holder == m || lists.first(holder) != s) continue;
    next[static_cast<size_t>(m)] = holder;
  }

  // Cycles of the functional graph m -> next[m].
  std::vector<Rotation> out;
  std::vector<int> state(static_cast<size_t>(num_men), 0);  // 0 new, 1 on path, 2 done
  for (AgentIndex start = 0; start < num_men; ++start) {
    std::vector<AgentIndex> path;
    AgentIndex m = start;
    while (m >= 0 && state[static_cast<size_t>(m)] == 0) {
      state[static_cast<size_t>(m)] = 1;
      path.push_back(m);
      m = next[static_cast<size_t>(m)];
    }
    if (m >= 0 && state[static_cast<size_t>(m)] == 1) {
      auto begin = std::find(path.begin(), path.end(), m);
      Rotation rot;
      for (auto it = begin; it != path.end(); ++it) rot.pairs.emplace_back(*it, lists.first(*it));
      auto smallest = std::min_element(rot.pairs.begin(), rot.pairs.end());
      std::rotate(rot.pairs.begin(), smallest, rot.pairs.end());
      out.push_back(std::move(rot));
    }
    for (AgentIndex v : path) state[static_cast<size_t>(v)] = 2;
  }
  std::sort(out.begin(), out.end(), [](const Rotation& a, const Rotation& b) { return a.pairs[0] < b.pairs[0]; });
  return out;
}

std::vector<Pair> eliminate_rotation(Shortlists& lists, const Rotation& rotation) {
  const size_t r = rotation.pairs.size();
  if (r < 2) throw PreconditionError("a rotation needs at least two pairs");
  for (size_t i = 0; i < r; ++i) {
    if (lists.first(rotation.man(i)) != rotation.woman(i) || lists.second(rotation.man(i)) != rotation.next_woman(i) ||
        lists.last(rotation.woman(i)) != rotation.man(i))
      throw PreconditionError("rotation is not exposed");
  }
  std::vector<Pair> removed;
  for (size_t i = 0; i < r; ++i) {
    auto batch = lists.remove_below(rotation.next_woman(i), rotation.man(i));
    removed.insert(removed.end(), batch.begin(), batch.end());
  }
  return removed;
}

Matching apply_rotation(Matching matching, const Rotation& rotation) {
  for (size_t i = 0; i < rotation.pairs.size(); ++i) matching.set_pair(rotation.man(i), rotation.next_woman(i));
  return matching;
}

RotationEnumeration enumerate_rotations(const Instance& instance) {
  auto men = propose_da(instance, Side::kMen);
  auto women = propose_da(instance, Side::kWomen);

  Shortlists lists = men.shortlists;
  PairTable move_to(instance), move_from(instance), removed_by(instance);
  std::vector<Rotation> found;

  // Every maximal elimination chain passes through every rotation exactly
  // once, so a single chain suffices.
  for (;;) {
    auto exposed = exposed_rotations(lists);
    if (exposed.empty()) break;
    for (Rotation& rot : exposed) {
      const int idx = static_cast<int>(found.size());
      for (size_t i = 0; i < rot.pairs.size(); ++i) {
        move_from.set(rot.man(i), rot.woman(i), idx);
        move_to.set(rot.man(i), rot.next_woman(i), idx);
      }
      for (auto [m, w] : eliminate_rotation(lists, rot)) removed_by.set(m, w, idx);
      rot.index = idx;
      found.push_back(std::move(rot));
    }
  }
  if (lists.current_matching() != women.matching)
    throw InvariantError("elimination chain did not end at the women-optimal matching");

  // Renumber by smallest man, ties by discovery.
  std::vector<int> order(found.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return found[static_cast<size_t>(a)].pairs[0].first < found[static_cast<size_t>(b)].pairs[0].first; });
  std::vector<int> renumber(found.size());
  for (size_t k = 0; k < order.size(); ++k) renumber[static_cast<size_t>(order[k])] = static_cast<int>(k);

  RotationEnumeration out{{}, men.matching, women.matching, men.shortlists, PairTable(instance), PairTable(instance),
                          PairTable(instance)};
  for (int old : order) {
    Rotation rot = found[static_cast<size_t>(old)];
    rot.index = renumber[static_cast<size_t>(old)];
    out.rotations.push_back(std::move(rot));
  }
  for (AgentIndex m = 0; m < instance.num_men(); ++m) {
    for (AgentIndex w = instance.num_men(); w < instance.size(); ++w) {
      auto remap = [&](int v) { return v < 0 ? -1 : renumber[static_cast<size_t>(v)]; };
      out.move_to.set(m, w, remap(move_to.at(m, w)));
      out.move_from.set(m, w, remap(move_from.at(m, w)));
      out.removed_by.set(m, w, remap(removed_by.at(m, w)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Digraph

RotationDigraph::RotationDigraph(int num_nodes, std::vector<std::pair<int, int>> edges)
    : edges_(std::move(edges)), out_(static_cast<size_t>(num_nodes)), in_(static_cast<size_t>(num_nodes)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (auto [a, b] : edges_) {
    if (a < 0 || b < 0 || a >= num_nodes || b >= num_nodes || a == b) throw InvariantError("bad rotation digraph edge");
    out_[static_cast<size_t>(a)].push_back(b);
    in_[static_cast<size_t>(b)].push_back(a);
  }
  std::vector<int> indegree(static_cast<size_t>(num_nodes));
  for (int v = 0; v < num_nodes; ++v) indegree[static_cast<size_t>(v)] = static_cast<int>(in_[static_cast<size_t>(v)].size());
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v = 0; v < num_nodes; ++v)
    if (indegree[static_cast<size_t>(v)] == 0) ready.push(v);
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    topo_.push_back(v);
    for (int s : out_[static_cast<size_t>(v)])
      if (--indegree[static_cast<size_t>(s)] == 0) ready.push(s);
  }
  if (static_cast<int>(topo_.size()) != num_nodes) throw InvariantError("rotation digraph has a cycle");
}

bool RotationDigraph::is_closed(std::span<const int> subset) const {
  std::vector<bool> in(static_cast<size_t>(num_nodes()), false);
  for (int v : subset) {
    if (v < 0 || v >= num_nodes()) return false;
    in[static_cast<size_t>(v)] = true;
  }
  for (int v : subset)
    for (int p : in_[static_cast<size_t>(v)])
      if (!in[static_cast<size_t>(p)]) return false;
  return true;
}

std::vector<int> RotationDigraph::closure(std::span<const int> subset) const {
  std::vector<bool> in(static_cast<size_t>(num_nodes()), false);
  std::vector<int> stack(subset.begin(), subset.end());
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (in[static_cast<size_t>(v)]) continue;
    in[static_cast<size_t>(v)] = true;
    for (int p : in_[static_cast<size_t>(v)]) stack.push_back(p);
  }
  std::vector<int> out;
  for (int v = 0; v < num_nodes(); ++v)
    if (in[static_cast<size_t>(v)]) out.push_back(v);
  return out;
}

std::vector<std::vector<bool>> RotationDigraph::transitive_closure() const {
  const auto n = static_cast<size_t>(num_nodes());
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  // Reverse topological order: successors are complete before their parents.
  for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
    auto& row = reach[static_cast<size_t>(*it)];
    for (int s : out_[static_cast<size_t>(*it)]) {
      row[static_cast<size_t>(s)] = true;
      const auto& srow = reach[static_cast<size_t>(s)];
      for (size_t k = 0; k < n; ++k)
        if (srow[k]) row[k] = true;
    }
  }
  return reach;
}

RotationDigraph build_rotation_digraph(const Instance& instance, const RotationEnumeration& rotations) {
  std::vector<std::pair<int, int>> edges;
  for (const Rotation& rot : rotations.rotations) {
    for (size_t i = 0; i < rot.pairs.size(); ++i) {
      const AgentIndex m = rot.man(i);
      // The rotation that brought m to his current partner comes first.
      if (int before = rotations.move_to.at(m, rot.woman(i)); before >= 0) edges.emplace_back(before, rot.index);
      // m skips every woman strictly between his old and new partner; each
      // skip needs the rotation that took her out of his reach.
      auto prefs = instance.preferences(m);
      for (int k = instance.rank(m, rot.woman(i)) + 1; k < instance.rank(m, rot.next_woman(i)); ++k) {
        AgentIndex w = prefs[static_cast<size_t>(k)];
        if (!instance.opposite(m, w)) continue;
        if (int before = rotations.removed_by.at(m, w); before >= 0 && before != rot.index)
          edges.emplace_back(before, rot.index);
      }
    }
  }
  return RotationDigraph(static_cast<int>(rotations.rotations.size()), std::move(edges));
}

RotationDigraph build_rotation_digraph(const Instance& instance) {
  return build_rotation_digraph(instance, enumerate_rotations(instance));
}

Lattice Lattice::build(const Instance& instance) {
  Lattice out;
  out.rotations = enumerate_rotations(instance);
  out.digraph = build_rotation_digraph(instance, out.rotations);
  return out;
}

Matching matching_of_elimination_order(const Lattice& lattice, std::span<const int> order) {
  Shortlists lists = lattice.rotations.initial;
  for (int idx : order) {
    if (idx < 0 || idx >= lattice.size()) throw PreconditionError("unknown rotation index");
    eliminate_rotation(lists, lattice.rotations.rotations[static_cast<size_t>(idx)]);
  }
  return lists.current_matching();
}

Matching matching_of_closed_subset(const Lattice& lattice, std::span<const int> subset) {
  if (!lattice.digraph.is_closed(subset)) throw PreconditionError("rotation subset is not closed");
  std::vector<bool> in(static_cast<size_t>(lattice.size()), false);
  for (int v : subset) in[static_cast<size_t>(v)] = true;
  std::vector<int> order;
  for (int v : lattice.digraph.topological_order())
    if (in[static_cast<size_t>(v)]) order.push_back(v);
  return matching_of_elimination_order(lattice, order);
}

}  // namespace robustmatch
