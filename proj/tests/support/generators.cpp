#include "generators.hpp"

#include <algorithm>
#include <unordered_set>

namespace fairorder::testing {

std::vector<std::vector<TransactionId>> random_receipts(Rng& rng, std::size_t replicas, std::size_t transactions) {
  const auto ids = numbered_ids("t", transactions);
  std::vector<std::vector<TransactionId>> out;
  const bool independent = rng.chance(1, 2);
  auto base = ids;
  rng.shuffle(base);
  for (std::size_t r = 0; r < replicas; ++r) {
    auto order = independent ? ids : base;
    if (independent) {
      rng.shuffle(order);
    } else if (order.size() > 1) {
      const auto swaps = rng.below(order.size() + 1);
      for (std::size_t s = 0; s < swaps; ++s) {
        const auto i = rng.below(order.size() - 1);
        std::swap(order[i], order[i + 1]);
      }
    }
    out.push_back(std::move(order));
  }
  return out;
}

VoteSet truncate_randomly(Rng& rng, const std::vector<std::vector<TransactionId>>& complete) {
  std::vector<std::vector<TransactionId>> out;
  for (const auto& v : complete) out.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(rng.between(0, v.size())));
  return VoteSet(std::move(out));
}

VoteSet complete_randomly(Rng& rng, const VoteSet& partial, const std::vector<TransactionId>& universe) {
  std::vector<std::vector<TransactionId>> out;
  for (const auto& v : partial.votes()) {
    std::unordered_set<TransactionId> have(v.begin(), v.end());
    std::vector<TransactionId> rest;
    for (const auto& id : universe) {
      if (!have.contains(id)) rest.push_back(id);
    }
    rng.shuffle(rest);
    auto full = v;
    full.insert(full.end(), rest.begin(), rest.end());
    out.push_back(std::move(full));
  }
  return VoteSet(std::move(out));
}

std::vector<VoteSet> extension_chain(Rng& rng, const std::vector<std::vector<TransactionId>>& complete,
                                     std::size_t steps) {
  std::vector<std::size_t> len(complete.size(), 0);
  std::vector<VoteSet> chain;
  for (std::size_t s = 0; s < steps; ++s) {
    std::vector<std::vector<TransactionId>> votes;
    for (std::size_t r = 0; r < complete.size(); ++r) {
      len[r] = rng.between(len[r], complete[r].size());
      votes.emplace_back(complete[r].begin(), complete[r].begin() + static_cast<std::ptrdiff_t>(len[r]));
    }
    chain.emplace_back(std::move(votes));
  }
  return chain;
}

std::vector<std::vector<TransactionId>> corrupt_votes(Rng& rng, std::vector<std::vector<TransactionId>> votes,
                                                      std::size_t faulty) {
  for (std::size_t k = 0; k < faulty && k < votes.size(); ++k) {
    auto& v = votes[votes.size() - 1 - k];
    switch (rng.below(3)) {
      case 0: std::reverse(v.begin(), v.end()); break;
      case 1: rng.shuffle(v); break;
      default:
        if (!v.empty()) std::rotate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(rng.below(v.size())), v.end());
        break;
    }
  }
  return votes;
}

}  // namespace fairorder::testing
