#include "fairorder/transaction.hpp"

namespace fairorder {

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::uint64_t TransactionId::digest() const noexcept { return fnv1a64(token_); }

std::vector<TransactionId> numbered_ids(std::string_view prefix, std::size_t count) {
  std::vector<TransactionId> ids;
  ids.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) ids.emplace_back(std::string(prefix) + std::to_string(i));
  return ids;
}

}  // namespace fairorder
