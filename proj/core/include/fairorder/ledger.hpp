#pragma once

#include "fairorder/ordering_graph.hpp"
#include "fairorder/transaction.hpp"
#include "fairorder/weight.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

namespace fairorder {

enum class EdgeStatus { AcceptedDeterminate, Rejected, Indeterminate };

std::string to_string(EdgeStatus status);

struct LedgerEntry {
  TxEdge edge;
  EdgeStatus status = EdgeStatus::AcceptedDeterminate;
  /// Ranking weight at decision time; fixes the edge's weight class.
  Weight weight;
  /// Global decision counter; within a class it is the implied tiebreak.
  std::uint64_t seq = 0;
};

/// Final (accepted or rejected) edge decisions kept across invocations.
class DecisionLedger {
 public:
  const LedgerEntry* find(const TxEdge& edge) const;
  /// Appends with the next sequence number. Throws InvalidArgumentError for
  /// Indeterminate or an edge already present.
  const LedgerEntry& record(const TxEdge& edge, EdgeStatus status, Weight weight);
  /// Inserts a loaded entry verbatim.
  void restore(const LedgerEntry& entry);
  /// Drops every entry touching one of `emitted`.
  std::size_t prune(const std::unordered_set<TransactionId>& emitted);

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::uint64_t next_seq() const noexcept { return next_seq_; }
  /// Sorted by weight class descending, then seq.
  std::vector<LedgerEntry> entries() const;

  friend bool operator==(const DecisionLedger& a, const DecisionLedger& b) { return a.entries() == b.entries(); }

 private:
  std::map<TxEdge, LedgerEntry> entries_;
  std::uint64_t next_seq_ = 0;
};

bool operator==(const LedgerEntry& a, const LedgerEntry& b);

struct LedgerSnapshot {
  DecisionLedger ledger;
  TotalOrder output;
};

// Line format, deterministic for equal ledgers:
//   fairorder-ledger v1
//   output <id>                                 (emission order)
//   entry <src> <dst> <status> <num> <den> <seq> (class desc, then seq)
std::string format_ledger_snapshot(const DecisionLedger& ledger, const TotalOrder& output);
/// Throws ParseError.
LedgerSnapshot parse_ledger_snapshot(const std::string& text);

}  // namespace fairorder
