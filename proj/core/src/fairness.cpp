#include "fairorder/fairness.hpp"

#include "fairorder/errors.hpp"
#include "fairorder/graph_algo.hpp"

#include <algorithm>
#include <limits>

namespace fairorder {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

bool meets_threshold(std::uint32_t count, Rational fraction, std::size_t replicas) {
  return Rational(static_cast<std::int64_t>(count)) >= fraction * static_cast<std::int64_t>(replicas);
}

ReceiptProfile honest_profile(const VoteSet& received) { return {received.votes(), {}, received}; }

OrderingGraph receipt_graph(const ReceiptProfile& profile) {
  return build_ordering_graph(VoteSet(profile.received));
}

FairnessVerdict audit_pairwise_fairness(const ReceiptProfile& profile, const TotalOrder& output, Rational gamma,
                                        Rational delta) {
  return audit_pairwise_fairness(receipt_graph(profile), output, gamma, delta);
}

FairnessVerdict audit_pairwise_fairness(const OrderingGraph& receipts, const TotalOrder& output, Rational gamma,
                                        Rational delta) {
  const auto n = receipts.replica_count();
  FairnessVerdict verdict{gamma, delta, true, std::nullopt, 0, 0, {}};
  const auto m = output.size();
  std::vector<std::size_t> at(m);
  for (std::size_t p = 0; p < m; ++p) at[p] = receipts.require_index(output[p]);

  const Rational link_threshold = gamma - 2 * delta;
  std::vector<std::vector<bool>> link(m, std::vector<bool>(m, false));
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = p + 1; q < m; ++q) link[p][q] = meets_threshold(receipts.count(at[p], at[q]), link_threshold, n);
  }

  constexpr auto none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> parent(m);
  for (std::size_t p = 0; p < m; ++p) {
    bool any_strong = false;
    for (std::size_t q = p + 1; q < m && !any_strong; ++q) {
      any_strong = meets_threshold(receipts.count(at[q], at[p]), gamma, n);
    }
    if (!any_strong) continue;

    // Forward reachability from position p along qualifying links.
    std::fill(parent.begin(), parent.end(), none);
    parent[p] = p;
    for (std::size_t q = p + 1; q < m; ++q) {
      for (std::size_t r = p; r < q; ++r) {
        if (parent[r] != none && link[r][q]) {
          parent[q] = r;
          break;
        }
      }
    }

    for (std::size_t q = p + 1; q < m; ++q) {
      const auto c = receipts.count(at[q], at[p]);
      if (!meets_threshold(c, gamma, n)) continue;
      const TxEdge pair{output[q], output[p]};
      if (parent[q] == none) {
        if (verdict.pass) {
          verdict.violation = pair;
          verdict.violation_receipts = c;
        }
        verdict.pass = false;
        ++verdict.violation_count;
        continue;
      }
      PairWitness w{pair, c, {}};
      for (auto cur = q; cur != p; cur = parent[cur]) {
        const auto prev = parent[cur];
        w.path.push_back({output[prev], output[cur], receipts.count(at[prev], at[cur])});
      }
      std::reverse(w.path.begin(), w.path.end());
      verdict.witnesses.push_back(std::move(w));
    }
  }
  return verdict;
}

std::vector<Rational> gamma_grid(std::size_t replicas) {
  std::vector<Rational> grid;
  const auto n = static_cast<std::int64_t>(replicas);
  for (std::int64_t i = n / 2 + 1; i <= n; ++i) grid.emplace_back(i, n);
  return grid;
}

std::vector<FairnessVerdict> audit_all_gamma(const ReceiptProfile& profile, const TotalOrder& output, Rational delta) {
  return audit_all_gamma(receipt_graph(profile), output, delta, gamma_grid(profile.replica_count()));
}

std::vector<FairnessVerdict> audit_all_gamma(const OrderingGraph& receipts, const TotalOrder& output, Rational delta,
                                             const std::vector<Rational>& grid) {
  std::vector<FairnessVerdict> out;
  for (const auto& g : grid) out.push_back(audit_pairwise_fairness(receipts, output, g, delta));
  return out;
}

FairnessVerdict audit_exact_minimality(const ReceiptProfile& profile, const TotalOrder& output, Rational gamma) {
  return audit_pairwise_fairness(profile, output, gamma, Rational(0));
}

namespace {

std::vector<std::vector<TransactionId>> threshold_components(const OrderingGraph& g, Rational fraction,
                                                             std::int64_t slack) {
  Adjacency adj(g.size());
  const auto n = static_cast<std::int64_t>(g.replica_count());
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t b = 0; b < g.size(); ++b) {
      if (a != b && Rational(g.count(a, b)) >= fraction * n - slack) adj[a].push_back(b);
    }
  }
  std::vector<std::vector<TransactionId>> out;
  for (const auto& comp : strongly_connected_components(adj)) {
    std::vector<TransactionId> ids;
    for (auto v : comp) ids.push_back(g.id(v));
    out.push_back(std::move(ids));
  }
  return out;
}

}  // namespace

BatchDecomposition batch_decomposition(const ReceiptProfile& profile, Rational gamma, Rational delta) {
  return batch_decomposition(receipt_graph(profile), gamma, delta);
}

BatchDecomposition batch_decomposition(const OrderingGraph& receipts, Rational gamma, Rational delta) {
  return {threshold_components(receipts, gamma - delta, 0)};
}

BaselineOrder aequitas_baseline(const VoteSet& votes, Rational gamma, std::size_t faulty) {
  const auto n = static_cast<std::int64_t>(votes.replica_count());
  if (n == 0) return {};
  if (!(gamma - Rational(1, 2) > Rational(2 * static_cast<std::int64_t>(faulty), n))) {
    throw InvalidArgumentError("baseline requires gamma - 1/2 > 2f/n (gamma " + to_string(gamma) + ", f " +
                               std::to_string(faulty) + ", n " + std::to_string(n) + ")");
  }
  BaselineOrder result;
  result.batches = threshold_components(build_ordering_graph(votes), gamma, static_cast<std::int64_t>(faulty));
  for (const auto& batch : result.batches) result.order.insert(result.order.end(), batch.begin(), batch.end());
  return result;
}

}  // namespace fairorder
