#include "fairorder/streaming.hpp"

#include "fairorder/errors.hpp"
#include "fairorder/graph_algo.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace fairorder {

namespace {

constexpr Weight kOne{1, 1};

struct Evaluation {
  EdgeStatus status = EdgeStatus::AcceptedDeterminate;
  std::vector<std::size_t> path;
  std::optional<IndexEdge> cause;
};

// Accepted determinate and indeterminate edges over the graph's vertices plus
// the future vertex at index size().
class DecisionGraph {
 public:
  DecisionGraph(const OrderingGraph& graph, const std::vector<bool>& future_in)
      : graph_(graph),
        future_(graph.size()),
        determinate_(graph.size() + 1),
        any_(graph.size() + 1),
        indeterminate_((graph.size() + 1) * (graph.size() + 1), false) {
    for (std::size_t x = 0; x < graph.size(); ++x) {
      add_indeterminate({x, future_});
      if (future_in[x]) add_indeterminate({future_, x});
    }
  }

  std::size_t future() const { return future_; }

  Evaluation evaluate(IndexEdge e) const {
    if (graph_.unanimous(e.from, e.to)) return {};
    const auto mask = locality_mask(graph_, e.from, e.to);
    const auto allowed = [&](std::size_t v) { return v == future_ || mask[v]; };
    if (auto p = find_path(determinate_, e.to, e.from, allowed)) return {EdgeStatus::Rejected, std::move(*p), {}};
    if (auto p = find_path(any_, e.to, e.from, allowed)) {
      Evaluation ev{EdgeStatus::Indeterminate, std::move(*p), {}};
      ev.cause = pick_cause(ev.path);
      return ev;
    }
    return {};
  }

  void accept(IndexEdge e) {
    determinate_[e.from].push_back(e.to);
    any_[e.from].push_back(e.to);
  }

  void add_indeterminate(IndexEdge e) {
    any_[e.from].push_back(e.to);
    indeterminate_[e.from * (future_ + 1) + e.to] = true;
  }

  TransactionId name(std::size_t v) const { return v == future_ ? future_vertex() : graph_.id(v); }
  TxEdge name(IndexEdge e) const { return {name(e.from), name(e.to)}; }

 private:
  bool is_indeterminate(std::size_t u, std::size_t w) const { return indeterminate_[u * (future_ + 1) + w]; }

  std::optional<IndexEdge> pick_cause(const std::vector<std::size_t>& path) const {
    std::optional<IndexEdge> best;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      const IndexEdge link{path[k], path[k + 1]};
      if (!is_indeterminate(link.from, link.to)) continue;
      if (link.from == future_) return link;
      if (link.to == future_) continue;
      if (!best || graph_.weight(link.from, link.to) > graph_.weight(best->from, best->to)) best = link;
    }
    return best;
  }

  const OrderingGraph& graph_;
  std::size_t future_;
  Adjacency determinate_;
  Adjacency any_;
  std::vector<bool> indeterminate_;
};

std::vector<EdgeDecision> future_decisions(const DecisionGraph& dg, const std::vector<bool>& future_in) {
  std::vector<EdgeDecision> out;
  for (std::size_t x = 0; x < future_in.size(); ++x) {
    out.push_back({dg.name(IndexEdge{x, dg.future()}), kOne, EdgeStatus::Indeterminate, false, {}, {}});
    if (future_in[x]) out.push_back({dg.name(IndexEdge{dg.future(), x}), kOne, EdgeStatus::Indeterminate, false, {}, {}});
  }
  return out;
}

EdgeDecision describe(const DecisionGraph& dg, const OrderingGraph& g, IndexEdge e, const Evaluation& ev) {
  EdgeDecision d{dg.name(e), g.weight(e.from, e.to), ev.status, false, {}, {}};
  for (auto v : ev.path) d.path.push_back(dg.name(v));
  if (ev.cause) d.cause = dg.name(*ev.cause);
  return d;
}

}  // namespace

StreamStep stream_step_preliminary(const VoteSet& votes, const EdgeTiebreak& tiebreak,
                                   std::optional<std::uint32_t> rounding, const TotalOrder& prior) {
  auto graph = build_streamed_graph(votes);
  if (rounding) graph = round_graph(graph, *rounding);
  const auto& g = graph.settled;

  DecisionGraph dg(g, graph.future_in);
  StreamStep step;
  step.decisions = future_decisions(dg, graph.future_in);
  for (const auto& e : sorted_edges(g, tiebreak)) {
    const auto ev = dg.evaluate(e);
    if (ev.status == EdgeStatus::AcceptedDeterminate) dg.accept(e);
    if (ev.status == EdgeStatus::Indeterminate) dg.add_indeterminate(e);
    step.decisions.push_back(describe(dg, g, e, ev));
  }
  step.output = emit_prefix(step.decisions, graph, prior);
  step.emitted.assign(step.output.begin() + static_cast<std::ptrdiff_t>(prior.size()), step.output.end());
  return step;
}

TotalOrder emit_prefix(std::span<const EdgeDecision> decisions, const StreamedOrderingGraph& graph,
                       const TotalOrder& prior) {
  const auto& g = graph.settled;
  std::vector<bool> mentioned(g.size(), false), blocked(g.size(), false);
  std::vector<IndexEdge> accepted;
  for (const auto& d : decisions) {
    const bool from_future = is_future(d.edge.from);
    const bool to_future = is_future(d.edge.to);
    const auto from = from_future ? 0 : g.require_index(d.edge.from);
    const auto to = to_future ? 0 : g.require_index(d.edge.to);
    if (!from_future) mentioned[from] = true;
    if (!to_future) mentioned[to] = true;
    if (d.status == EdgeStatus::Indeterminate) {
      if (to_future) continue;
      blocked[to] = true;
      if (!from_future) blocked[from] = true;
    } else if (d.status == EdgeStatus::AcceptedDeterminate && !from_future && !to_future) {
      accepted.push_back({from, to});
    }
  }

  std::vector<std::size_t> compact(g.size(), 0), members;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (!mentioned[v]) continue;
    compact[v] = members.size();
    members.push_back(v);
  }
  Adjacency adj(members.size());
  for (const auto& e : accepted) adj[compact[e.from]].push_back(compact[e.to]);
  const auto order = topological_sort(adj);
  if (!order) throw InternalFault("determinate edges form a cycle");

  TotalOrder cut;
  for (auto c : *order) {
    const auto v = members[c];
    if (blocked[v]) break;
    cut.push_back(g.id(v));
  }

  std::size_t absent = 0;
  while (absent < prior.size()) {
    const auto idx = g.index_of(prior[absent]);
    if (idx && mentioned[*idx]) break;
    ++absent;
  }
  const std::size_t carried = prior.size() - absent;
  if (cut.size() < carried || !std::equal(prior.begin() + static_cast<std::ptrdiff_t>(absent), prior.end(), cut.begin())) {
    throw InternalFault("new output does not extend the previous output");
  }
  TotalOrder out = prior;
  out.insert(out.end(), cut.begin() + static_cast<std::ptrdiff_t>(carried), cut.end());
  return out;
}

StreamStep stream_step_live(StreamState& state, const VoteSet& votes, const LiveOptions& options) {
  if (state.last_votes) votes.require_extends(*state.last_votes);

  auto full = build_streamed_graph(votes);
  if (options.rounding) full = round_graph(full, *options.rounding);

  const std::unordered_set<TransactionId> emitted(state.output.begin(), state.output.end());
  for (const auto& id : state.output) {
    if (!full.settled.index_of(id)) throw InternalFault("emitted transaction " + id.str() + " is not settled");
  }
  StreamedOrderingGraph work;
  work.settled = full.settled.without(emitted);
  work.pending = full.pending;
  for (const auto& id : work.settled.vertices()) {
    work.future_in.push_back(full.future_in[full.settled.require_index(id)]);
  }
  const auto& g = work.settled;

  DecisionGraph dg(g, work.future_in);
  StreamStep step;
  step.decisions = future_decisions(dg, work.future_in);

  const auto edges = sorted_edges(g, options.base_order);
  std::size_t begin = 0;
  while (begin < edges.size()) {
    const auto weight = g.weight(edges[begin].from, edges[begin].to);
    std::size_t end = begin;
    while (end < edges.size() && g.weight(edges[end].from, edges[end].to) == weight) ++end;

    std::vector<std::pair<std::uint64_t, IndexEdge>> replay;
    std::deque<IndexEdge> queue;
    for (std::size_t k = begin; k < end; ++k) {
      const auto e = edges[k];
      if (g.unanimous(e.from, e.to)) {
        dg.accept(e);
        step.decisions.push_back(describe(dg, g, e, {}));
        continue;
      }
      if (const auto* entry = state.ledger.find(g.to_tx(e))) {
        if (entry->weight != weight || entry->weight.denominator() != weight.denominator()) {
          throw InvalidArgumentError("ledger weight " + entry->weight.to_string() + " for " + to_string(entry->edge) +
                                     " does not match " + weight.to_string() + "; was it written with other rounding?");
        }
        replay.emplace_back(entry->seq, e);
      } else {
        queue.push_back(e);
      }
    }

    std::sort(replay.begin(), replay.end());
    for (const auto& [seq, e] : replay) {
      const auto ev = dg.evaluate(e);
      const auto recorded = state.ledger.find(g.to_tx(e))->status;
      if (ev.status != EdgeStatus::Indeterminate && ev.status != recorded) {
        throw InternalFault("ledger decision for " + to_string(g.to_tx(e)) + " contradicted by path evaluation");
      }
      if (recorded == EdgeStatus::AcceptedDeterminate) dg.accept(e);
      auto d = describe(dg, g, e, ev.status == recorded ? ev : Evaluation{recorded, {}, {}});
      d.from_ledger = true;
      step.decisions.push_back(std::move(d));
    }

    std::size_t since_progress = 0;
    std::map<std::pair<std::size_t, std::size_t>, Evaluation> last;
    while (!queue.empty() && since_progress < queue.size()) {
      const auto e = queue.front();
      queue.pop_front();
      auto ev = dg.evaluate(e);
      if (ev.status == EdgeStatus::Indeterminate) {
        last[{e.from, e.to}] = std::move(ev);
        queue.push_back(e);
        ++since_progress;
        ++step.deferrals;
        continue;
      }
      since_progress = 0;
      if (ev.status == EdgeStatus::AcceptedDeterminate) dg.accept(e);
      state.ledger.record(g.to_tx(e), ev.status, weight);
      step.decisions.push_back(describe(dg, g, e, ev));
    }
    for (const auto& e : queue) {
      dg.add_indeterminate(e);
      step.decisions.push_back(describe(dg, g, e, last.at({e.from, e.to})));
    }
    begin = end;
  }

  const auto before = state.output.size();
  state.output = emit_prefix(step.decisions, work, state.output);
  step.emitted.assign(state.output.begin() + static_cast<std::ptrdiff_t>(before), state.output.end());
  step.output = state.output;
  if (options.prune_ledger && !step.emitted.empty()) {
    step.pruned = state.ledger.prune({state.output.begin(), state.output.end()});
  }
  state.last_votes = votes;
  ++state.invocations;
  return step;
}

std::vector<TxEdge> indeterminacy_witness(std::span<const EdgeDecision> decisions, const TxEdge& edge) {
  std::unordered_map<TransactionId, std::unordered_map<TransactionId, const EdgeDecision*>> index;
  for (const auto& d : decisions) index[d.edge.from][d.edge.to] = &d;
  const auto lookup = [&](const TxEdge& e) -> const EdgeDecision* {
    auto it = index.find(e.from);
    if (it == index.end()) return nullptr;
    auto jt = it->second.find(e.to);
    return jt == it->second.end() ? nullptr : jt->second;
  };

  const auto* start = lookup(edge);
  if (!start || start->status != EdgeStatus::Indeterminate) {
    throw InvalidArgumentError("edge " + display_name(edge.from) + " -> " + display_name(edge.to) +
                               " is not indeterminate");
  }
  if (is_future(edge.to)) throw InvalidArgumentError("edges into the future vertex have no witness chain");

  std::vector<TxEdge> chain;
  const auto* cur = start;
  while (!is_future(cur->edge.from)) {
    if (!cur->cause) throw InternalFault("indeterminate edge without a recorded cause");
    chain.push_back(*cur->cause);
    cur = lookup(*cur->cause);
    if (!cur || cur->status != EdgeStatus::Indeterminate) throw InternalFault("witness chain leaves the indeterminate edges");
    if (chain.size() > decisions.size()) throw InternalFault("witness chain does not terminate");
  }
  return chain;
}

std::vector<IndexEdge> implied_edge_order(const OrderingGraph& graph, const DecisionLedger& ledger,
                                          const EdgeTiebreak& base) {
  auto edges = sorted_edges(graph, base);
  const auto seq = [&](const IndexEdge& e) -> std::optional<std::uint64_t> {
    if (const auto* entry = ledger.find(graph.to_tx(e))) return entry->seq;
    return std::nullopt;
  };
  std::stable_sort(edges.begin(), edges.end(), [&](const IndexEdge& a, const IndexEdge& b) {
    if (auto c = graph.weight(a.from, a.to) <=> graph.weight(b.from, b.to); c != 0) return c > 0;
    const bool ua = graph.unanimous(a.from, a.to);
    const bool ub = graph.unanimous(b.from, b.to);
    if (ua != ub) return ua;
    const auto sa = seq(a);
    const auto sb = seq(b);
    if (sa.has_value() != sb.has_value()) return sa.has_value();
    return sa && *sa < *sb;
  });
  return edges;
}

}  // namespace fairorder
