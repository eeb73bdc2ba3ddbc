#pragma once

#include "fairorder/fairness.hpp"
#include "fairorder/ordering_graph.hpp"
#include "fairorder/votes.hpp"
#include "fairorder/weight.hpp"

#include <array>
#include <cstddef>

namespace fairorder {

// Hand-built vote sets with known structure. Transaction ids are `t1`, `t2`,
// ...; `t` and `tp` stand for an unnumbered pair.

/// 16 replicas, 8 transactions: two four-cycles where Ranked Pairs has to
/// interleave the cycles (t5 < t1 < t4 < t8).
VoteSet interleaved_cycles_instance();

/// n = 10: 3x (t1 t2 t tp), 3x (t2 t tp t1), 4x (t tp t1 t2).
VoteSet high_gamma_instance();
/// n = 10: 6x (t tp), 4x (tp t).
VoteSet low_gamma_instance();
/// n = 10: 4x (t1 t2 t3), 4x (t3 t1 t2), 2x (t2 t3 t1).
VoteSet intermediate_gamma_instance();

/// Among edges between consecutive ids (t(i+1), t(i)) and (t(i), t(i+1)):
/// larger i first, and (t(i+1), t(i)) just before its reversal. Other ties
/// fall back to the lexicographic rule. Ids must be `t<number>`.
EdgeTiebreak adjacent_swap_tiebreak();

struct NonliveInstance {
  VoteSet votes;
  EdgeTiebreak tiebreak;
};

/// Two replicas receiving t2 t1 t4 t3 t6 t5 ... and t1 t3 t2 t5 t4 ...,
/// each vote cut to `length` entries. Throws InvalidArgumentError unless
/// length is even and at least 4.
NonliveInstance generate_nonlive_instance(std::size_t length);

/// Full receipt order of one replica of the non-live pattern (replica 0 or 1).
std::vector<TransactionId> alternating_swap_order(std::size_t replica, std::size_t length);

/// Two worlds that report identical votes but in which no output ordering
/// of t1 t2 t3 is exactly gamma-minimal in both.
struct ImpossibilityInstance {
  std::size_t replicas = 0;
  Rational gamma;
  /// ceil(gamma * n)
  std::size_t threshold = 0;
  std::size_t group_size = 0;
  std::size_t groups = 0;
  /// n mod group_size; the last `faulty` replicas are faulty.
  std::size_t faulty = 0;
  /// Honest replicas receiving (t1 t2 t3), (t2 t3 t1), (t3 t1 t2).
  std::array<std::size_t, 3> rotation_counts{};
  /// Faulty replicas receive (t1 t3 t2) in the first world and (t2 t3 t1) in
  /// the second; both report (t1 t3 t2).
  ReceiptProfile first;
  ReceiptProfile second;
};

/// Throws InvalidArgumentError when gamma <= 1/2, n mod (n - ceil(gamma n) + 1)
/// is 0, or no honest split produces the two worlds.
ImpossibilityInstance generate_impossibility_instance(std::size_t replicas, Rational gamma);

}  // namespace fairorder
