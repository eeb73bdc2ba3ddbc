#pragma once

#include "fairorder/transaction.hpp"

#include <cstddef>
#include <span>
#include <unordered_set>
#include <vector>

namespace fairorder {

/// One replica's reported ordering: a duplicate-free sequence of transactions,
/// earliest first.
struct OrderingVote {
  std::size_t replica = 0;
  std::vector<TransactionId> sequence;
};

/// Exactly one vote per replica, indexed 0..n-1. Votes may be partial
/// (unequal lengths) when used as streaming input.
class VoteSet {
 public:
  VoteSet() = default;
  /// Vote `i` belongs to replica `i`.
  explicit VoteSet(std::vector<std::vector<TransactionId>> sequences);
  /// Throws InvalidVoteError unless replica indices are exactly 0..n-1.
  explicit VoteSet(std::vector<OrderingVote> votes);

  std::size_t replica_count() const noexcept { return votes_.size(); }
  bool empty() const noexcept { return votes_.empty(); }

  std::span<const TransactionId> vote(std::size_t replica) const { return votes_.at(replica); }
  const std::vector<std::vector<TransactionId>>& votes() const noexcept { return votes_; }

  /// Union of all voted transactions, ascending.
  std::vector<TransactionId> transactions() const;
  /// Transactions present in every vote, ascending.
  std::vector<TransactionId> settled() const;

  bool is_complete() const;
  /// Throws IncompleteVoteError naming the first replica that omits a
  /// transaction voted by someone else.
  void require_complete() const;

  /// Throws PrefixViolationError unless every vote here extends the
  /// corresponding vote of `prior`; throws InvalidVoteError on replica-count
  /// mismatch.
  void require_extends(const VoteSet& prior) const;

  friend bool operator==(const VoteSet&, const VoteSet&) = default;

 private:
  void validate() const;

  std::vector<std::vector<TransactionId>> votes_;
};

/// Filters every vote to `keep`, preserving relative order.
VoteSet restrict_votes(const VoteSet& votes, const std::unordered_set<TransactionId>& keep);
VoteSet restrict_votes(const VoteSet& votes, std::span<const TransactionId> keep);

}  // namespace fairorder
