#pragma once

#include "fairorder/ordering_graph.hpp"
#include "fairorder/transaction.hpp"
#include "fairorder/votes.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fairorder {

/// The future vertex. Real transaction ids are never empty, so the empty id
/// cannot collide with one.
inline const TransactionId& future_vertex() {
  static const TransactionId future;
  return future;
}
inline bool is_future(const TransactionId& id) { return id.empty(); }
/// Display name: the id itself, or "<future>".
std::string display_name(const TransactionId& id);

/// Ordering graph of partial votes: complete over the settled transactions
/// (those in every vote) plus the future vertex.
struct StreamedOrderingGraph {
  OrderingGraph settled;
  /// Weight of (future, settled.id(i)): true iff a pending transaction
  /// precedes it in some vote. (tx, future) has weight 1 for every tx.
  std::vector<bool> future_in;
  /// In some vote but not all, ascending.
  std::vector<TransactionId> pending;
};

StreamedOrderingGraph build_streamed_graph(const VoteSet& votes);

/// Rounds the settled weights; future edges are unaffected.
StreamedOrderingGraph round_graph(const StreamedOrderingGraph& graph, std::uint32_t k);

/// Vertices that may lie on a path deciding the edge.
struct LocalitySet {
  std::vector<TransactionId> transactions;
  bool includes_future = true;

  bool contains(const TransactionId& id) const;
};

/// U = (settled \ (R_from ∪ P_to)) ∪ {from, to, future}. The endpoints are
/// kept even when the edge is unanimous and the raw set difference would drop
/// them.
LocalitySet locality_set(const StreamedOrderingGraph& graph, const TxEdge& edge);

/// Membership mask of locality_set over `graph` vertex indices.
std::vector<bool> locality_mask(const OrderingGraph& graph, std::size_t from, std::size_t to);

}  // namespace fairorder
