#pragma once

#include "fairorder/ledger.hpp"
#include "fairorder/ordering_graph.hpp"
#include "fairorder/streamed_graph.hpp"
#include "fairorder/transaction.hpp"
#include "fairorder/votes.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace fairorder {

/// Outcome for one edge of a streamed graph. Edges touching the future vertex
/// use future_vertex() as that endpoint and have weight 1.
struct EdgeDecision {
  TxEdge edge;
  /// Ranking weight (rounded when rounding is on).
  Weight weight;
  EdgeStatus status = EdgeStatus::Indeterminate;
  /// Adopted from the ledger rather than decided in this invocation.
  bool from_ledger = false;
  /// Rejected: the determinate path to .. from. Indeterminate real edge: the
  /// path to .. from that made it indeterminate.
  std::vector<TransactionId> path;
  /// Indeterminate real edge: the indeterminate edge on `path` responsible.
  /// An edge leaving the future vertex when the path passes through it,
  /// otherwise the heaviest one.
  std::optional<TxEdge> cause;
};

struct StreamStep {
  std::vector<EdgeDecision> decisions;
  /// Whole output after this invocation.
  TotalOrder output;
  /// Transactions emitted by this invocation.
  TotalOrder emitted;
  /// Times an edge was sent to the back of its weight class queue.
  std::size_t deferrals = 0;
  std::size_t pruned = 0;
};

/// Single stateless pass over partial votes with a fixed edge order. `prior`
/// is the output of an earlier invocation the result must extend; a result
/// that does not is an InternalFault.
StreamStep stream_step_preliminary(const VoteSet& votes, const EdgeTiebreak& tiebreak = {},
                                   std::optional<std::uint32_t> rounding = std::nullopt,
                                   const TotalOrder& prior = {});

/// Topological order of the settled transactions under the accepted
/// determinate edges (ties by id), cut before the first transaction blocked
/// by an indeterminate edge. Edges into the future vertex never block. Prior
/// transactions that `decisions` does not mention, or that `graph` lacks, are
/// taken as already emitted. Throws InternalFault unless the result extends `prior`.
TotalOrder emit_prefix(std::span<const EdgeDecision> decisions, const StreamedOrderingGraph& graph,
                       const TotalOrder& prior);

struct LiveOptions {
  std::optional<std::uint32_t> rounding;
  /// Order within a weight class for edges the ledger has not decided.
  EdgeTiebreak base_order;
  bool prune_ledger = true;
};

struct StreamState {
  DecisionLedger ledger;
  TotalOrder output;
  /// Input of the previous invocation; absent when resumed from a snapshot.
  std::optional<VoteSet> last_votes;
  std::uint64_t invocations = 0;
};

/// One invocation of the live variant: edges that would turn indeterminate
/// are deferred within their weight class, final decisions go to the
/// ledger, and recorded decisions are replayed first in later invocations.
/// Throws PrefixViolationError when `votes` does not extend the previous
/// input, InternalFault when a recorded decision is contradicted.
StreamStep stream_step_live(StreamState& state, const VoteSet& votes, const LiveOptions& options = {});

/// Follows recorded causes from an indeterminate edge: each link is
/// indeterminate, heavier than the one before, and the last leaves the
/// future vertex. Throws InvalidArgumentError when `edge` is not an
/// indeterminate edge of `decisions`, InternalFault when the chain is broken.
std::vector<TxEdge> indeterminacy_witness(std::span<const EdgeDecision> decisions, const TxEdge& edge);

/// The edge order the live variant has effectively used: weight class
/// descending, unanimous edges first, ledger decisions by sequence number,
/// then the remaining edges in `base` order.
std::vector<IndexEdge> implied_edge_order(const OrderingGraph& graph, const DecisionLedger& ledger,
                                          const EdgeTiebreak& base = {});

}  // namespace fairorder
