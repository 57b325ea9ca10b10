#ifndef ROBUSTMATCH_FLOW_HPP_
#define ROBUSTMATCH_FLOW_HPP_

#include <vector>

#include "robustmatch/lattice.hpp"
#include "robustmatch/rational.hpp"

namespace robustmatch {

// Rotation digraph with node weights. `change[r]` is the objective change
// caused by eliminating rotation r; the closure problem maximizes the node
// weight -change.
struct WeightedRotationDigraph {
  RotationDigraph digraph;
  std::vector<Rational> change;

  Rational node_weight(int node) const { return -change[static_cast<size_t>(node)]; }
  int num_nodes() const { return digraph.num_nodes(); }
};

struct FlowEdge {
  int from = 0;
  int to = 0;
  Rational capacity;
  // Copied from the digraph and carrying the surrogate infinity.
  bool internal = false;
};

// s-t network for the maximum-weight closure problem. Nodes 0..R-1 are the
// rotations, R is the source and R + 1 the sink.
struct FlowNetwork {
  int num_rotations = 0;
  std::vector<FlowEdge> edges;
  // 1 + sum of |node weight|; exceeds every finite cut.
  Rational surrogate_infinity;

  int source() const { return num_rotations; }
  int sink() const { return num_rotations + 1; }
  int num_nodes() const { return num_rotations + 2; }
};

// Positive node weight: rotation -> sink. Negative: source -> rotation.
// Zero: no terminal edge. Digraph edges keep their direction.
FlowNetwork build_flow_network(const WeightedRotationDigraph& weighted);

struct MinCut {
  Rational flow_value;
  // Indices into FlowNetwork::edges crossing from source side to sink side.
  std::vector<int> cut_edges;
  // Nodes reachable from the source in the final residual network.
  std::vector<bool> source_side;
};

// Exact maximum flow (Dinic on integer capacities after clearing the common
// denominator). The returned cut is the one induced by residual reachability
// from the source, so it is deterministic.
MinCut max_flow_min_cut(const FlowNetwork& network);

// Positive rotations whose sink edge is not cut, plus everything that reaches
// them in the digraph. Ascending, closed.
std::vector<int> extract_optimal_closed_subset(const WeightedRotationDigraph& weighted, const MinCut& cut);

// Convenience: network, cut and extraction in one call.
std::vector<int> max_weight_closed_subset(const WeightedRotationDigraph& weighted);

}  // namespace robustmatch

#endif  // ROBUSTMATCH_FLOW_HPP_
