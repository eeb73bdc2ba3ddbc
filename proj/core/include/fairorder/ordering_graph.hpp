#pragma once

#include "fairorder/transaction.hpp"
#include "fairorder/votes.hpp"
#include "fairorder/weight.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace fairorder {

/// Directed pair of transactions.
struct TxEdge {
  TransactionId from;
  TransactionId to;

  TxEdge reversed() const { return {to, from}; }
  friend bool operator==(const TxEdge&, const TxEdge&) = default;
  friend auto operator<=>(const TxEdge&, const TxEdge&) = default;
};

std::string to_string(const TxEdge& edge);

/// Directed pair of vertex indices into one graph.
struct IndexEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  friend bool operator==(const IndexEdge&, const IndexEdge&) = default;
  friend auto operator<=>(const IndexEdge&, const IndexEdge&) = default;
};

/// Order among edges of equal weight. The default is (source, target)
/// ascending by TransactionId.
class EdgeTiebreak {
 public:
  using Less = std::function<bool(const TxEdge&, const TxEdge&)>;

  EdgeTiebreak() = default;
  EdgeTiebreak(Less less, std::string name) : less_(std::move(less)), name_(std::move(name)) {}

  bool is_lexicographic() const noexcept { return !less_; }
  bool before(const TxEdge& a, const TxEdge& b) const { return less_ ? less_(a, b) : a < b; }
  const std::string& name() const noexcept { return name_; }

 private:
  Less less_;
  std::string name_ = "lexicographic";
};

/// Complete weighted digraph over a transaction set: w(a, b) is the fraction
/// of replicas that vote a before b.
///
/// Vertices are stored in ascending TransactionId order. A graph produced by
/// round_graph() ranks edges by the rounded weight but keeps the raw counts,
/// which still define unanimity and the P/Q/R neighbourhoods.
class OrderingGraph {
 public:
  OrderingGraph() = default;
  /// `counts[i * size + j]` replicas vote vertex i before vertex j.
  OrderingGraph(std::vector<TransactionId> vertices, std::uint32_t replicas, std::vector<std::uint32_t> counts);

  std::size_t size() const noexcept { return ids_.size(); }
  std::uint32_t replica_count() const noexcept { return replicas_; }
  std::optional<std::uint32_t> rounding() const noexcept { return rounding_; }

  std::span<const TransactionId> vertices() const noexcept { return ids_; }
  const TransactionId& id(std::size_t i) const { return ids_.at(i); }
  std::optional<std::size_t> index_of(const TransactionId& id) const;
  /// Throws UnknownTransactionError.
  std::size_t require_index(const TransactionId& id) const;

  std::uint32_t count(std::size_t from, std::size_t to) const { return counts_[from * ids_.size() + to]; }
  std::uint32_t count(const TransactionId& from, const TransactionId& to) const {
    return count(require_index(from), require_index(to));
  }
  /// count / n, never rounded.
  Weight raw_weight(std::size_t from, std::size_t to) const { return {count(from, to), replicas_}; }
  /// The weight edges are ranked by: rounded when this graph is rounded.
  Weight weight(std::size_t from, std::size_t to) const;
  Weight weight(const TransactionId& from, const TransactionId& to) const;
  /// Every replica votes `from` before `to`.
  bool unanimous(std::size_t from, std::size_t to) const { return count(from, to) == replicas_; }

  IndexEdge to_index(const TxEdge& e) const { return {require_index(e.from), require_index(e.to)}; }
  TxEdge to_tx(IndexEdge e) const { return {ids_[e.from], ids_[e.to]}; }

  /// Copy without the given vertices.
  OrderingGraph without(const std::unordered_set<TransactionId>& drop) const;

 private:
  friend OrderingGraph round_graph(const OrderingGraph& graph, std::uint32_t k);

  std::vector<TransactionId> ids_;
  std::unordered_map<TransactionId, std::size_t> index_;
  std::uint32_t replicas_ = 0;
  std::vector<std::uint32_t> counts_;
  std::optional<std::uint32_t> rounding_;
};

/// Pairwise counts over the given (ascending) vertex set. Every vote must
/// contain every vertex; throws IncompleteVoteError naming the replica.
OrderingGraph count_pairs(const VoteSet& votes, std::vector<TransactionId> vertices);

/// The ordering graph of complete votes.
OrderingGraph build_ordering_graph(const VoteSet& votes);

/// Ranks edges by the nearest multiple of 1/k (halves round up). Throws
/// InvalidArgumentError for k == 0.
OrderingGraph round_graph(const OrderingGraph& graph, std::uint32_t k);

/// P (w(x, t) = 1), Q (0 < w(x, t) < 1) and R (w(x, t) = 0) for a vertex t,
/// from raw weights.
struct Neighborhoods {
  std::vector<TransactionId> preceding;
  std::vector<TransactionId> concurrent;
  std::vector<TransactionId> subsequent;
};

Neighborhoods neighborhoods(const OrderingGraph& graph, const TransactionId& tx);

/// Processing order of Ranked Pairs: ranking weight descending, unanimous
/// edges first within a weight, then `tiebreak`. Edges nobody votes for are
/// omitted: their reversal is unanimous and is always accepted first.
std::vector<IndexEdge> sorted_edges(const OrderingGraph& graph, const EdgeTiebreak& tiebreak = {});
std::vector<TxEdge> edge_iteration_order(const OrderingGraph& graph, const EdgeTiebreak& tiebreak = {});

}  // namespace fairorder
