#include "fairorder/votes.hpp"

#include "fairorder/errors.hpp"

#include <algorithm>
#include <set>

namespace fairorder {

VoteSet::VoteSet(std::vector<std::vector<TransactionId>> sequences) : votes_(std::move(sequences)) {
  validate();
}

VoteSet::VoteSet(std::vector<OrderingVote> votes) {
  std::vector<bool> seen(votes.size(), false);
  votes_.resize(votes.size());
  for (auto& v : votes) {
    if (v.replica >= votes.size()) {
      throw InvalidVoteError("replica index " + std::to_string(v.replica) + " out of range for " +
                             std::to_string(votes.size()) + " votes");
    }
    if (seen[v.replica]) throw InvalidVoteError("replica " + std::to_string(v.replica) + " votes twice");
    seen[v.replica] = true;
    votes_[v.replica] = std::move(v.sequence);
  }
  validate();
}

void VoteSet::validate() const {
  for (std::size_t r = 0; r < votes_.size(); ++r) {
    std::unordered_set<TransactionId> seen;
    for (const auto& id : votes_[r]) {
      if (id.empty()) throw InvalidVoteError("replica " + std::to_string(r) + " votes an empty transaction id");
      if (!seen.insert(id).second) {
        throw InvalidVoteError("replica " + std::to_string(r) + " lists transaction '" + id.str() + "' twice");
      }
    }
  }
}

std::vector<TransactionId> VoteSet::transactions() const {
  std::set<TransactionId> all;
  for (const auto& v : votes_) all.insert(v.begin(), v.end());
  return {all.begin(), all.end()};
}

std::vector<TransactionId> VoteSet::settled() const {
  if (votes_.empty()) return {};
  std::vector<TransactionId> result;
  std::vector<std::unordered_set<TransactionId>> present;
  present.reserve(votes_.size());
  for (const auto& v : votes_) present.emplace_back(v.begin(), v.end());
  for (const auto& id : transactions()) {
    if (std::all_of(present.begin(), present.end(), [&](const auto& s) { return s.contains(id); })) {
      result.push_back(id);
    }
  }
  return result;
}

bool VoteSet::is_complete() const {
  const auto all = transactions().size();
  return std::all_of(votes_.begin(), votes_.end(), [&](const auto& v) { return v.size() == all; });
}

void VoteSet::require_complete() const {
  const auto all = transactions();
  for (std::size_t r = 0; r < votes_.size(); ++r) {
    if (votes_[r].size() == all.size()) continue;
    std::unordered_set<TransactionId> mine(votes_[r].begin(), votes_[r].end());
    for (const auto& id : all) {
      if (!mine.contains(id)) throw IncompleteVoteError(r, id.str());
    }
  }
}

void VoteSet::require_extends(const VoteSet& prior) const {
  if (prior.replica_count() != replica_count()) {
    throw InvalidVoteError("replica count changed from " + std::to_string(prior.replica_count()) + " to " +
                           std::to_string(replica_count()));
  }
  for (std::size_t r = 0; r < votes_.size(); ++r) {
    const auto& before = prior.votes_[r];
    const auto& now = votes_[r];
    for (std::size_t i = 0; i < before.size(); ++i) {
      if (i >= now.size()) {
        throw PrefixViolationError(r, i, "vote shrank, '" + before[i].str() + "' is missing");
      }
      if (before[i] != now[i]) {
        throw PrefixViolationError(r, i, "expected '" + before[i].str() + "', found '" + now[i].str() + "'");
      }
    }
  }
}

VoteSet restrict_votes(const VoteSet& votes, const std::unordered_set<TransactionId>& keep) {
  std::vector<std::vector<TransactionId>> out;
  out.reserve(votes.replica_count());
  for (const auto& v : votes.votes()) {
    auto& filtered = out.emplace_back();
    std::copy_if(v.begin(), v.end(), std::back_inserter(filtered), [&](const auto& id) { return keep.contains(id); });
  }
  return VoteSet(std::move(out));
}

VoteSet restrict_votes(const VoteSet& votes, std::span<const TransactionId> keep) {
  return restrict_votes(votes, std::unordered_set<TransactionId>(keep.begin(), keep.end()));
}

}  // namespace fairorder
