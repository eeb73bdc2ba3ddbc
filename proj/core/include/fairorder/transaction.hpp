#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace fairorder {

/// Opaque transaction identifier.
///
/// Identifiers are ordered shortlex (shorter tokens first, then bytewise), so
/// `t2 < t10`. The order and the 64-bit digest depend only on the token bytes
/// and are identical on every platform.
class TransactionId {
 public:
  TransactionId() = default;
  explicit TransactionId(std::string token) : token_(std::move(token)) {}

  const std::string& str() const noexcept { return token_; }
  bool empty() const noexcept { return token_.empty(); }

  /// FNV-1a over the token bytes.
  std::uint64_t digest() const noexcept;

  friend bool operator==(const TransactionId&, const TransactionId&) = default;
  friend std::strong_ordering operator<=>(const TransactionId& a, const TransactionId& b) noexcept {
    if (auto c = a.token_.size() <=> b.token_.size(); c != 0) return c;
    return a.token_.compare(b.token_) <=> 0;
  }

 private:
  std::string token_;
};

std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// Ordered list of transactions; the product of every ordering algorithm.
using TotalOrder = std::vector<TransactionId>;

/// Convenience for tests and fixtures: ids `prefix1 .. prefixN`.
std::vector<TransactionId> numbered_ids(std::string_view prefix, std::size_t count);

}  // namespace fairorder

template <>
struct std::hash<fairorder::TransactionId> {
  std::size_t operator()(const fairorder::TransactionId& id) const noexcept {
    return static_cast<std::size_t>(id.digest());
  }
};
