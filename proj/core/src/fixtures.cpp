#include "fairorder/fixtures.hpp"

#include "fairorder/errors.hpp"

#include <charconv>
#include <optional>
#include <sstream>
#include <string_view>

namespace fairorder {

namespace {

std::vector<TransactionId> ids(std::initializer_list<std::string_view> tokens) {
  std::vector<TransactionId> out;
  for (auto t : tokens) out.emplace_back(std::string(t));
  return out;
}

std::vector<TransactionId> numbered(std::initializer_list<int> numbers) {
  std::vector<TransactionId> out;
  for (int k : numbers) out.emplace_back("t" + std::to_string(k));
  return out;
}

void repeat(std::vector<std::vector<TransactionId>>& votes, std::size_t times, const std::vector<TransactionId>& vote) {
  for (std::size_t i = 0; i < times; ++i) votes.push_back(vote);
}

std::optional<long long> id_number(const TransactionId& id) {
  const auto& s = id.str();
  if (s.size() < 2 || s[0] != 't') return std::nullopt;
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

VoteSet interleaved_cycles_instance() {
  return VoteSet(std::vector<std::vector<TransactionId>>{
      numbered({1, 2, 5, 6, 7, 8, 3, 4}), numbered({1, 2, 6, 7, 8, 5, 3, 4}),
      numbered({1, 2, 7, 8, 5, 6, 3, 4}), numbered({1, 2, 8, 5, 6, 7, 3, 4}),
      numbered({2, 3, 5, 6, 7, 4, 8, 1}), numbered({2, 3, 6, 7, 8, 5, 4, 1}),
      numbered({2, 3, 7, 8, 5, 6, 4, 1}), numbered({2, 3, 8, 5, 6, 7, 1, 4}),
      numbered({3, 4, 5, 6, 7, 8, 1, 2}), numbered({3, 4, 6, 7, 5, 8, 1, 2}),
      numbered({3, 4, 7, 8, 5, 6, 1, 2}), numbered({3, 4, 8, 5, 6, 7, 1, 2}),
      numbered({4, 5, 1, 6, 7, 8, 2, 3}), numbered({4, 1, 6, 7, 8, 5, 2, 3}),
      numbered({4, 1, 7, 8, 5, 6, 2, 3}), numbered({4, 1, 8, 5, 6, 7, 2, 3}),
  });
}

VoteSet high_gamma_instance() {
  std::vector<std::vector<TransactionId>> v;
  repeat(v, 3, ids({"t1", "t2", "t", "tp"}));
  repeat(v, 3, ids({"t2", "t", "tp", "t1"}));
  repeat(v, 4, ids({"t", "tp", "t1", "t2"}));
  return VoteSet(std::move(v));
}

VoteSet low_gamma_instance() {
  std::vector<std::vector<TransactionId>> v;
  repeat(v, 6, ids({"t", "tp"}));
  repeat(v, 4, ids({"tp", "t"}));
  return VoteSet(std::move(v));
}

VoteSet intermediate_gamma_instance() {
  std::vector<std::vector<TransactionId>> v;
  repeat(v, 4, numbered({1, 2, 3}));
  repeat(v, 4, numbered({3, 1, 2}));
  repeat(v, 2, numbered({2, 3, 1}));
  return VoteSet(std::move(v));
}

EdgeTiebreak adjacent_swap_tiebreak() {
  // Key (-i, 0) for (t(i+1), t(i)) and (-i, 1) for (t(i), t(i+1)).
  const auto key = [](const TxEdge& e) -> std::optional<std::pair<long long, int>> {
    const auto a = id_number(e.from);
    const auto b = id_number(e.to);
    if (!a || !b) return std::nullopt;
    if (*a == *b + 1) return std::pair{-*b, 0};
    if (*b == *a + 1) return std::pair{-*a, 1};
    return std::nullopt;
  };
  return EdgeTiebreak(
      [key](const TxEdge& x, const TxEdge& y) {
        const auto kx = key(x);
        const auto ky = key(y);
        if (kx && ky) return *kx < *ky;
        if (kx.has_value() != ky.has_value()) return kx.has_value();
        return x < y;
      },
      "adversarial-swap");
}

std::vector<TransactionId> alternating_swap_order(std::size_t replica, std::size_t length) {
  if (replica > 1) throw InvalidArgumentError("the alternating pattern has replicas 0 and 1");
  std::vector<long long> seq;
  if (replica == 0) {
    for (long long i = 1; seq.size() < length; ++i) {
      seq.push_back(2 * i);
      seq.push_back(2 * i - 1);
    }
  } else {
    seq.push_back(1);
    for (long long i = 1; seq.size() < length; ++i) {
      seq.push_back(2 * i + 1);
      seq.push_back(2 * i);
    }
  }
  seq.resize(length);
  std::vector<TransactionId> out;
  for (auto k : seq) out.emplace_back("t" + std::to_string(k));
  return out;
}

NonliveInstance generate_nonlive_instance(std::size_t length) {
  if (length < 4 || length % 2 != 0) throw InvalidArgumentError("length must be even and at least 4");
  return {VoteSet(std::vector<std::vector<TransactionId>>{alternating_swap_order(0, length),
                                                          alternating_swap_order(1, length)}),
          adjacent_swap_tiebreak()};
}

ImpossibilityInstance generate_impossibility_instance(std::size_t replicas, Rational gamma) {
  const auto n = static_cast<std::int64_t>(replicas);
  if (n < 1) throw InvalidArgumentError("need at least one replica");
  if (!(gamma > Rational(1, 2)) || gamma > Rational(1)) throw InvalidArgumentError("gamma must lie in (1/2, 1]");
  const Rational scaled = gamma * n;
  const auto m = scaled.numerator() / scaled.denominator() + (scaled.denominator() == 1 ? 0 : 1);

  ImpossibilityInstance inst;
  inst.replicas = replicas;
  inst.gamma = gamma;
  inst.threshold = static_cast<std::size_t>(m);
  inst.group_size = static_cast<std::size_t>(n - m + 1);
  inst.groups = replicas / inst.group_size;
  inst.faulty = replicas % inst.group_size;
  if (inst.faulty == 0) {
    throw InvalidArgumentError("n mod (n - ceil(gamma n) + 1) is 0; no faulty replicas to exploit");
  }

  const auto f = static_cast<std::int64_t>(inst.faulty);
  const auto h = n - f;
  std::optional<std::array<std::int64_t, 3>> split;
  for (std::int64_t x = 0; x <= h && !split; ++x) {
    for (std::int64_t y = 0; x + y <= h && !split; ++y) {
      const auto z = h - x - y;
      const auto weak_but_tippable = [&](std::int64_t pair) { return pair < m && pair + f >= m; };
      if (weak_but_tippable(x + z) && weak_but_tippable(x + y) && weak_but_tippable(y + z) && x + f < m &&
          y + f < m && z + f < m) {
        split = std::array{x, y, z};
      }
    }
  }
  if (!split) throw InvalidArgumentError("no honest split yields indistinguishable worlds for these parameters");

  const auto abc = numbered({1, 2, 3});
  const auto bca = numbered({2, 3, 1});
  const auto cab = numbered({3, 1, 2});
  const auto acb = numbered({1, 3, 2});
  std::vector<std::vector<TransactionId>> honest;
  repeat(honest, static_cast<std::size_t>((*split)[0]), abc);
  repeat(honest, static_cast<std::size_t>((*split)[1]), bca);
  repeat(honest, static_cast<std::size_t>((*split)[2]), cab);
  for (int i = 0; i < 3; ++i) inst.rotation_counts[static_cast<std::size_t>(i)] = static_cast<std::size_t>((*split)[i]);

  auto reported = honest;
  repeat(reported, inst.faulty, acb);
  std::vector<std::size_t> faulty;
  for (std::size_t r = static_cast<std::size_t>(h); r < replicas; ++r) faulty.push_back(r);

  auto first_received = honest;
  repeat(first_received, inst.faulty, acb);
  auto second_received = honest;
  repeat(second_received, inst.faulty, bca);

  inst.first = {std::move(first_received), faulty, VoteSet(reported)};
  inst.second = {std::move(second_received), faulty, VoteSet(reported)};
  return inst;
}

}  // namespace fairorder
