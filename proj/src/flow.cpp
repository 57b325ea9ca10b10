#include "robustmatch/flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "robustmatch/error.hpp"

namespace robustmatch {

FlowNetwork build_flow_network(const WeightedRotationDigraph& weighted) {
  FlowNetwork net;
  net.num_rotations = weighted.num_nodes();
  net.surrogate_infinity = 1;
  for (int v = 0; v < net.num_rotations; ++v) net.surrogate_infinity += abs(weighted.node_weight(v));

  for (int v = 0; v < net.num_rotations; ++v) {
    Rational w = weighted.node_weight(v);
    if (w > 0)
      net.edges.push_back({v, net.sink(), w, false});
    else if (w < 0)
      net.edges.push_back({net.source(), v, Rational(-w), false});
  }
  for (auto [a, b] : weighted.digraph.edges()) net.edges.push_back({a, b, net.surrogate_infinity, true});
  return net;
}

namespace {

class Dinic {
 public:
  explicit Dinic(int n) : graph_(static_cast<size_t>(n)), level_(static_cast<size_t>(n)), iter_(static_cast<size_t>(n)) {}

  int add_edge(int from, int to, const Integer& cap) {
    graph_[static_cast<size_t>(from)].push_back({to, static_cast<int>(graph_[static_cast<size_t>(to)].size()), cap});
    graph_[static_cast<size_t>(to)].push_back({from, static_cast<int>(graph_[static_cast<size_t>(from)].size()) - 1, 0});
    return static_cast<int>(graph_[static_cast<size_t>(from)].size()) - 1;
  }

  Integer run(int s, int t) {
    Integer total = 0;
    while (bfs(s, t)) {
      std::fill(iter_.begin(), iter_.end(), 0);
      for (;;) {
        Integer pushed = dfs(s, t, Integer(-1));
        if (pushed == 0) break;
        total += pushed;
      }
    }
    return total;
  }

  std::vector<bool> reachable(int s) const {
    std::vector<bool> seen(graph_.size(), false);
    std::vector<int> stack{s};
    seen[static_cast<size_t>(s)] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const Arc& a : graph_[static_cast<size_t>(v)]) {
        if (a.cap > 0 && !seen[static_cast<size_t>(a.to)]) {
          seen[static_cast<size_t>(a.to)] = true;
          stack.push_back(a.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    int to;
    int rev;
    Integer cap;  // residual
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[static_cast<size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const Arc& a : graph_[static_cast<size_t>(v)]) {
        if (a.cap > 0 && level_[static_cast<size_t>(a.to)] < 0) {
          level_[static_cast<size_t>(a.to)] = level_[static_cast<size_t>(v)] + 1;
          q.push(a.to);
        }
      }
    }
    return level_[static_cast<size_t>(t)] >= 0;
  }

  // limit < 0 means unbounded (only at the source).
  Integer dfs(int v, int t, const Integer& limit) {
    if (v == t) return limit;
    auto& edges = graph_[static_cast<size_t>(v)];
    for (int& i = iter_[static_cast<size_t>(v)]; i < static_cast<int>(edges.size()); ++i) {
      Arc& a = edges[static_cast<size_t>(i)];
      if (a.cap <= 0 || level_[static_cast<size_t>(a.to)] != level_[static_cast<size_t>(v)] + 1) continue;
      Integer want = limit < 0 ? a.cap : Integer(std::min(limit, a.cap));
      Integer got = dfs(a.to, t, want);
      if (got > 0) {
        a.cap -= got;
        graph_[static_cast<size_t>(a.to)][static_cast<size_t>(a.rev)].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<std::vector<Arc>> graph_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

}  // namespace

MinCut max_flow_min_cut(const FlowNetwork& network) {
  Integer scale = 1;
  for (const FlowEdge& e : network.edges) {
    if (e.capacity < 0) throw PreconditionError("negative capacity");
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), e.capacity.get_den_mpz_t());
  }

  Dinic dinic(network.num_nodes());
  for (const FlowEdge& e : network.edges) {
    Rational scaled = e.capacity * scale;
    dinic.add_edge(e.from, e.to, scaled.get_num());
  }
  Integer flow = dinic.run(network.source(), network.sink());

  MinCut cut;
  cut.flow_value = Rational(flow, scale);
  cut.flow_value.canonicalize();
  cut.source_side = dinic.reachable(network.source());
  Rational capacity = 0;
  for (size_t k = 0; k < network.edges.size(); ++k) {
    const FlowEdge& e = network.edges[k];
    if (cut.source_side[static_cast<size_t>(e.from)] && !cut.source_side[static_cast<size_t>(e.to)]) {
      cut.cut_edges.push_back(static_cast<int>(k));
      capacity += e.capacity;
    }
  }
  if (capacity != cut.flow_value) throw InvariantError("min cut capacity differs from max flow value");
  return cut;
}

std::vector<int> extract_optimal_closed_subset(const WeightedRotationDigraph& weighted, const MinCut& cut) {
  std::vector<int> seeds;
  for (int v = 0; v < weighted.num_nodes(); ++v)
    if (weighted.node_weight(v) > 0 && !cut.source_side[static_cast<size_t>(v)]) seeds.push_back(v);
  return weighted.digraph.closure(seeds);
}

std::vector<int> max_weight_closed_subset(const WeightedRotationDigraph& weighted) {
  FlowNetwork net = build_flow_network(weighted);
  MinCut cut = max_flow_min_cut(net);
  for (int k : cut.cut_edges)
    if (net.edges[static_cast<size_t>(k)].internal) throw InvariantError("surrogate-infinite edge in the minimum cut");
  return extract_optimal_closed_subset(weighted, cut);
}

}  // namespace robustmatch
