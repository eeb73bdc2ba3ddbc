#include "fairorder/streamed_graph.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace fairorder {

std::string display_name(const TransactionId& id) { return is_future(id) ? "<future>" : id.str(); }

StreamedOrderingGraph build_streamed_graph(const VoteSet& votes) {
  StreamedOrderingGraph g;
  auto settled = votes.settled();
  const std::unordered_set<TransactionId> settled_set(settled.begin(), settled.end());
  for (const auto& id : votes.transactions()) {
    if (!settled_set.contains(id)) g.pending.push_back(id);
  }
  g.settled = count_pairs(restrict_votes(votes, settled_set), std::move(settled));
  g.future_in.assign(g.settled.size(), false);
  for (const auto& vote : votes.votes()) {
    bool pending_seen = false;
    for (const auto& id : vote) {
      if (!settled_set.contains(id)) {
        pending_seen = true;
      } else if (pending_seen) {
        g.future_in[g.settled.require_index(id)] = true;
      }
    }
  }
  return g;
}

StreamedOrderingGraph round_graph(const StreamedOrderingGraph& graph, std::uint32_t k) {
  StreamedOrderingGraph out = graph;
  out.settled = round_graph(graph.settled, k);
  return out;
}

bool LocalitySet::contains(const TransactionId& id) const {
  if (is_future(id)) return includes_future;
  return std::binary_search(transactions.begin(), transactions.end(), id);
}

std::vector<bool> locality_mask(const OrderingGraph& graph, std::size_t from, std::size_t to) {
  const auto n = graph.replica_count();
  std::vector<bool> mask(graph.size(), false);
  for (std::size_t x = 0; x < graph.size(); ++x) {
    const bool in_r_from = x != from && graph.count(x, from) == 0;
    const bool in_p_to = x != to && graph.count(x, to) == n;
    mask[x] = !in_r_from && !in_p_to;
  }
  mask[from] = true;
  mask[to] = true;
  return mask;
}

LocalitySet locality_set(const StreamedOrderingGraph& graph, const TxEdge& edge) {
  const auto& g = graph.settled;
  const auto mask = locality_mask(g, g.require_index(edge.from), g.require_index(edge.to));
  LocalitySet u;
  for (std::size_t x = 0; x < g.size(); ++x) {
    if (mask[x]) u.transactions.push_back(g.id(x));
  }
  return u;
}

}  // namespace fairorder
