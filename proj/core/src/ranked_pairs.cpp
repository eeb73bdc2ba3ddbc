#include "fairorder/ranked_pairs.hpp"

#include "fairorder/errors.hpp"
#include "fairorder/graph_algo.hpp"

namespace fairorder {

namespace {

TotalOrder sort_accepted(const OrderingGraph& graph, const Adjacency& accepted) {
  const auto order = topological_sort(accepted);
  if (!order) throw InternalFault("ranked pairs accepted a cycle");
  TotalOrder out;
  out.reserve(order->size());
  for (auto v : *order) out.push_back(graph.id(v));
  return out;
}

}  // namespace

TotalOrder ranked_pairs(const VoteSet& votes, const EdgeTiebreak& tiebreak) {
  if (votes.empty()) return {};
  return ranked_pairs(build_ordering_graph(votes), tiebreak);
}

TotalOrder ranked_pairs(const OrderingGraph& graph, const EdgeTiebreak& tiebreak) {
  const auto edges = sorted_edges(graph, tiebreak);
  return ranked_pairs_in_order(graph, edges);
}

TotalOrder ranked_pairs_in_order(const OrderingGraph& graph, std::span<const IndexEdge> order) {
  Reachability reach(graph.size());
  Adjacency accepted(graph.size());
  for (const auto& e : order) {
    if (reach.reaches(e.to, e.from)) continue;
    reach.add_edge(e.from, e.to);
    accepted[e.from].push_back(e.to);
  }
  return sort_accepted(graph, accepted);
}

RankedPairsTrace ranked_pairs_traced(const OrderingGraph& graph, const EdgeTiebreak& tiebreak) {
  RankedPairsTrace trace;
  Reachability reach(graph.size());
  Adjacency accepted(graph.size());
  for (const auto& e : sorted_edges(graph, tiebreak)) {
    PairDecision d{graph.to_tx(e), graph.weight(e.from, e.to), false, {}};
    if (reach.reaches(e.to, e.from)) {
      const auto path = find_path(accepted, e.to, e.from);
      if (!path) throw InternalFault("rejected edge " + to_string(d.edge) + " has no reverse path");
      for (auto v : *path) d.witness.push_back(graph.id(v));
    } else {
      d.accepted = true;
      reach.add_edge(e.from, e.to);
      accepted[e.from].push_back(e.to);
    }
    trace.decisions.push_back(std::move(d));
  }
  trace.order = sort_accepted(graph, accepted);
  return trace;
}

}  // namespace fairorder
