#include "fairorder/ordering_graph.hpp"

#include "fairorder/errors.hpp"

#include <algorithm>

namespace fairorder {

std::string to_string(const TxEdge& edge) { return "(" + edge.from.str() + ", " + edge.to.str() + ")"; }

OrderingGraph::OrderingGraph(std::vector<TransactionId> vertices, std::uint32_t replicas,
                             std::vector<std::uint32_t> counts)
    : ids_(std::move(vertices)), replicas_(replicas), counts_(std::move(counts)) {
  if (counts_.size() != ids_.size() * ids_.size()) {
    throw InvalidArgumentError("count matrix does not match vertex count");
  }
  index_.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (i > 0 && !(ids_[i - 1] < ids_[i])) throw InvalidArgumentError("vertices must be strictly ascending");
    index_.emplace(ids_[i], i);
  }
}

std::optional<std::size_t> OrderingGraph::index_of(const TransactionId& id) const {
  if (auto it = index_.find(id); it != index_.end()) return it->second;
  return std::nullopt;
}

std::size_t OrderingGraph::require_index(const TransactionId& id) const {
  if (auto idx = index_of(id)) return *idx;
  throw UnknownTransactionError(id.str());
}

Weight OrderingGraph::weight(std::size_t from, std::size_t to) const {
  const Weight raw = raw_weight(from, to);
  return rounding_ ? round_weight(raw, *rounding_) : raw;
}

Weight OrderingGraph::weight(const TransactionId& from, const TransactionId& to) const {
  return weight(require_index(from), require_index(to));
}

OrderingGraph OrderingGraph::without(const std::unordered_set<TransactionId>& drop) const {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!drop.contains(ids_[i])) keep.push_back(i);
  }
  std::vector<TransactionId> ids;
  std::vector<std::uint32_t> counts(keep.size() * keep.size(), 0);
  for (std::size_t a = 0; a < keep.size(); ++a) {
    ids.push_back(ids_[keep[a]]);
    for (std::size_t b = 0; b < keep.size(); ++b) counts[a * keep.size() + b] = count(keep[a], keep[b]);
  }
  OrderingGraph out(std::move(ids), replicas_, std::move(counts));
  out.rounding_ = rounding_;
  return out;
}

OrderingGraph count_pairs(const VoteSet& votes, std::vector<TransactionId> vertices) {
  const std::size_t size = vertices.size();
  std::unordered_map<TransactionId, std::size_t> index;
  for (std::size_t i = 0; i < size; ++i) index.emplace(vertices[i], i);

  std::vector<std::uint32_t> counts(size * size, 0);
  std::vector<std::size_t> order;
  for (std::size_t r = 0; r < votes.replica_count(); ++r) {
    order.clear();
    for (const auto& id : votes.vote(r)) {
      if (auto it = index.find(id); it != index.end()) order.push_back(it->second);
    }
    if (order.size() != size) {
      std::vector<bool> present(size, false);
      for (auto i : order) present[i] = true;
      for (std::size_t i = 0; i < size; ++i) {
        if (!present[i]) throw IncompleteVoteError(r, vertices[i].str());
      }
    }
    for (std::size_t a = 0; a < order.size(); ++a) {
      for (std::size_t b = a + 1; b < order.size(); ++b) ++counts[order[a] * size + order[b]];
    }
  }
  return OrderingGraph(std::move(vertices), static_cast<std::uint32_t>(votes.replica_count()), std::move(counts));
}

OrderingGraph build_ordering_graph(const VoteSet& votes) { return count_pairs(votes, votes.transactions()); }

OrderingGraph round_graph(const OrderingGraph& graph, std::uint32_t k) {
  if (k == 0) throw InvalidArgumentError("rounding denominator must be at least 1");
  OrderingGraph out = graph;
  out.rounding_ = k;
  return out;
}

Neighborhoods neighborhoods(const OrderingGraph& graph, const TransactionId& tx) {
  const std::size_t t = graph.require_index(tx);
  Neighborhoods result;
  for (std::size_t x = 0; x < graph.size(); ++x) {
    if (x == t) continue;
    const auto c = graph.count(x, t);
    if (c == graph.replica_count()) {
      result.preceding.push_back(graph.id(x));
    } else if (c == 0) {
      result.subsequent.push_back(graph.id(x));
    } else {
      result.concurrent.push_back(graph.id(x));
    }
  }
  return result;
}

std::vector<IndexEdge> sorted_edges(const OrderingGraph& graph, const EdgeTiebreak& tiebreak) {
  std::vector<IndexEdge> edges;
  for (std::size_t a = 0; a < graph.size(); ++a) {
    for (std::size_t b = 0; b < graph.size(); ++b) {
      if (a != b && graph.count(a, b) > 0) edges.push_back({a, b});
    }
  }
  std::stable_sort(edges.begin(), edges.end(), [&](const IndexEdge& x, const IndexEdge& y) {
    if (auto c = graph.weight(x.from, x.to) <=> graph.weight(y.from, y.to); c != 0) return c > 0;
    const bool ux = graph.unanimous(x.from, x.to);
    const bool uy = graph.unanimous(y.from, y.to);
    if (ux != uy) return ux;
    // Vertex indices follow TransactionId order, so index order is the
    // lexicographic rule.
    if (tiebreak.is_lexicographic()) return x < y;
    return tiebreak.before(graph.to_tx(x), graph.to_tx(y));
  });
  return edges;
}

std::vector<TxEdge> edge_iteration_order(const OrderingGraph& graph, const EdgeTiebreak& tiebreak) {
  std::vector<TxEdge> out;
  for (const auto& e : sorted_edges(graph, tiebreak)) out.push_back(graph.to_tx(e));
  return out;
}

}  // namespace fairorder
