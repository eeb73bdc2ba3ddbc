#pragma once

#include "fairorder/ordering_graph.hpp"
#include "fairorder/transaction.hpp"
#include "fairorder/votes.hpp"
#include "fairorder/weight.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fairorder {

/// Ground truth for an audit: the order in which every replica (faulty ones
/// included) actually received each transaction, plus what was reported.
struct ReceiptProfile {
  /// Complete per-replica receipt orders over the same transaction set.
  std::vector<std::vector<TransactionId>> received;
  /// Sorted indices of faulty replicas.
  std::vector<std::size_t> faulty;
  VoteSet reported;

  std::size_t replica_count() const noexcept { return received.size(); }
};

/// Honest profile: everyone reports exactly what they received.
ReceiptProfile honest_profile(const VoteSet& received);

/// Receipt counts: count(a, b) replicas received a before b. Throws
/// IncompleteVoteError when a receipt order misses a transaction.
OrderingGraph receipt_graph(const ReceiptProfile& profile);

struct WitnessLink {
  TransactionId from;
  TransactionId to;
  std::uint32_t receipts = 0;
};

/// A strong pair output in reverse together with its justifying path.
struct PairWitness {
  /// Received first -> received second by at least gamma * n replicas.
  TxEdge pair;
  std::uint32_t receipts = 0;
  std::vector<WitnessLink> path;
};

struct FairnessVerdict {
  Rational gamma;
  Rational delta;
  bool pass = true;
  /// First unjustified reversal in output order (pair.from was received
  /// first but output second).
  std::optional<TxEdge> violation;
  std::uint32_t violation_receipts = 0;
  std::size_t violation_count = 0;
  /// One per justified reversal.
  std::vector<PairWitness> witnesses;
};

/// Checks every pair received a-before-b by >= gamma*n replicas but output
/// b-before-a for a path b = t1 .. tk = a following the output order whose
/// links each have >= (gamma - 2*delta)*n receipts. Throws
/// UnknownTransactionError for output transactions outside the profile.
FairnessVerdict audit_pairwise_fairness(const ReceiptProfile& profile, const TotalOrder& output, Rational gamma,
                                        Rational delta);
FairnessVerdict audit_pairwise_fairness(const OrderingGraph& receipts, const TotalOrder& output, Rational gamma,
                                        Rational delta);

/// gamma = i/n for n/2 < i <= n, ascending.
std::vector<Rational> gamma_grid(std::size_t replicas);

std::vector<FairnessVerdict> audit_all_gamma(const ReceiptProfile& profile, const TotalOrder& output, Rational delta);
std::vector<FairnessVerdict> audit_all_gamma(const OrderingGraph& receipts, const TotalOrder& output, Rational delta,
                                             const std::vector<Rational>& grid);

/// delta = 0.
FairnessVerdict audit_exact_minimality(const ReceiptProfile& profile, const TotalOrder& output, Rational gamma);

struct BatchDecomposition {
  std::vector<std::vector<TransactionId>> batches;
};

/// Strongly connected components of the receipt graph after dropping edges
/// with fewer than (gamma - delta)*n receipts, in condensation order.
BatchDecomposition batch_decomposition(const ReceiptProfile& profile, Rational gamma, Rational delta);
BatchDecomposition batch_decomposition(const OrderingGraph& receipts, Rational gamma, Rational delta);

struct BaselineOrder {
  std::vector<std::vector<TransactionId>> batches;
  /// Batches concatenated, each ordered by id.
  TotalOrder order;
};

/// Batch ordering with a fixed threshold: a dependency a -> b exists iff at
/// least gamma*n - f replicas report a before b. Requires complete votes and
/// gamma - 1/2 > 2f/n (InvalidArgumentError otherwise).
BaselineOrder aequitas_baseline(const VoteSet& votes, Rational gamma, std::size_t faulty);

/// count >= r * n, exactly.
bool meets_threshold(std::uint32_t count, Rational fraction, std::size_t replicas);

std::string to_string(const Rational& r);

}  // namespace fairorder
