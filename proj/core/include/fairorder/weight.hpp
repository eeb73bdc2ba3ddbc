#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <string>

namespace fairorder {

using Rational = boost::rational<std::int64_t>;

/// Edge weight `count / denominator` of an ordering graph.
///
/// The denominator is the replica count (or the rounding denominator for a
/// rounded graph) and is kept unreduced. Comparison is exact.
class Weight {
 public:
  constexpr Weight() = default;
  constexpr Weight(std::uint32_t count, std::uint32_t denominator)
      : count_(count), denominator_(denominator) {}

  constexpr std::uint32_t count() const noexcept { return count_; }
  constexpr std::uint32_t denominator() const noexcept { return denominator_; }

  constexpr bool is_zero() const noexcept { return count_ == 0; }
  constexpr bool is_one() const noexcept { return denominator_ != 0 && count_ == denominator_; }

  Rational to_rational() const { return {static_cast<std::int64_t>(count_), static_cast<std::int64_t>(denominator_)}; }
  std::string to_string() const { return std::to_string(count_) + "/" + std::to_string(denominator_); }

  friend constexpr std::strong_ordering operator<=>(const Weight& a, const Weight& b) noexcept {
    const auto lhs = static_cast<std::uint64_t>(a.count_) * b.denominator_;
    const auto rhs = static_cast<std::uint64_t>(b.count_) * a.denominator_;
    return lhs <=> rhs;
  }
  /// Value equality: 2/4 == 1/2.
  friend constexpr bool operator==(const Weight& a, const Weight& b) noexcept {
    return (a <=> b) == std::strong_ordering::equal;
  }

 private:
  std::uint32_t count_ = 0;
  std::uint32_t denominator_ = 1;
};

/// Nearest multiple of 1/k, halves rounded up.
constexpr Weight round_weight(Weight w, std::uint32_t k) noexcept {
  const auto num = 2ULL * w.count() * k + w.denominator();
  return Weight(static_cast<std::uint32_t>(num / (2ULL * w.denominator())), k);
}

}  // namespace fairorder
