#pragma once

#include "fairorder/ordering_graph.hpp"
#include "fairorder/transaction.hpp"
#include "fairorder/votes.hpp"

#include <span>
#include <vector>

namespace fairorder {

struct PairDecision {
  TxEdge edge;
  Weight weight;
  bool accepted = false;
  /// For a rejected edge (a, b): an accepted path b .. a present when the
  /// edge was considered.
  std::vector<TransactionId> witness;
};

struct RankedPairsTrace {
  TotalOrder order;
  std::vector<PairDecision> decisions;
};

/// Ranked Pairs over complete votes. Throws IncompleteVoteError.
TotalOrder ranked_pairs(const VoteSet& votes, const EdgeTiebreak& tiebreak = {});
TotalOrder ranked_pairs(const OrderingGraph& graph, const EdgeTiebreak& tiebreak = {});

/// Ranked Pairs with an explicit edge processing order. Pairs missing from
/// `order` stay unconstrained; the topological sort breaks ties by id.
TotalOrder ranked_pairs_in_order(const OrderingGraph& graph, std::span<const IndexEdge> order);

/// Same result as ranked_pairs(), recording every decision and a witness
/// path for each rejection.
RankedPairsTrace ranked_pairs_traced(const OrderingGraph& graph, const EdgeTiebreak& tiebreak = {});

}  // namespace fairorder
