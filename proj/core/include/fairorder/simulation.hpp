#pragma once

#include "fairorder/fairness.hpp"
#include "fairorder/streaming.hpp"
#include "fairorder/transaction.hpp"
#include "fairorder/votes.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fairorder {

/// How a replica turns what it received into what it reports. Every strategy
/// reports a duplicate-free sequence that only grows by appending.
struct FaultStrategy {
  enum class Kind { Honest, WindowShuffle, TargetedSwap, Withholder };

  Kind kind = Kind::Honest;
  /// WindowShuffle: each round's new receipts are shuffled in chunks of this
  /// size.
  std::size_t window = 0;
  /// TargetedSwap: for (a, b), a is held back until b arrives and then
  /// reported right after it.
  std::vector<std::pair<TransactionId, TransactionId>> pairs;
  /// Withholder: never reported (the completion rule appends them).
  std::vector<TransactionId> victims;

  bool honest() const noexcept { return kind == Kind::Honest; }
};

struct ScheduledTx {
  std::uint64_t send_time = 0;
  TransactionId id;
};

struct ScenarioConfig {
  std::size_t replicas = 4;
  /// Synchrony bound: every delivery delay lies in [0, delta).
  std::uint64_t delta = 10;
  std::uint64_t round_len = 5;
  /// A transaction first reported in round r is appended to every vote still
  /// missing it after round r + completion_rounds.
  std::uint64_t completion_rounds = 2;
  std::uint64_t seed = 0;
  std::vector<ScheduledTx> schedule;
  /// One per replica; empty means all honest.
  std::vector<FaultStrategy> faults;
  std::optional<std::uint32_t> rounding_denominator;
  std::uint64_t horizon = 200;
};

/// `count` transactions `<prefix>1 ..` with send gaps drawn from
/// [0, max_gap], starting at tick 0.
std::vector<ScheduledTx> generate_schedule(std::size_t count, std::uint64_t max_gap, std::uint64_t seed,
                                           const std::string& prefix = "t");

/// Throws InvalidArgumentError naming the first broken constraint.
void validate(const ScenarioConfig& config);

std::vector<std::size_t> faulty_replicas(const ScenarioConfig& config);

struct Receipt {
  std::uint64_t tick = 0;
  TransactionId id;
};

struct RoundRecord {
  std::uint64_t round = 0;
  std::uint64_t tick = 0;
  VoteSet votes;
  TotalOrder emitted;
};

struct Fabrication {
  std::uint64_t round = 0;
  std::uint64_t tick = 0;
  std::size_t replica = 0;
  TransactionId id;
};

struct OutputEvent {
  std::uint64_t tick = 0;
  TransactionId id;
};

struct SimTrace {
  ScenarioConfig config;
  /// Per replica, in receipt order; covers the whole schedule.
  std::vector<std::vector<Receipt>> receipts;
  std::vector<RoundRecord> rounds;
  std::vector<Fabrication> fabrications;
  std::vector<OutputEvent> output;

  TotalOrder output_order() const;
  /// Ground-truth receipt orders and the last reported votes.
  ReceiptProfile profile() const;
};

/// Deterministic for a given config.
SimTrace run_simulation(const ScenarioConfig& config);

/// Completion rule: appends, in digest order, every transaction first
/// reported at or before round `round - completion_rounds` that a vote still
/// lacks. `first_reported[id]` is the round a transaction first appeared in
/// any vote. Returns the appended (replica, id) pairs.
std::vector<Fabrication> fabricate_missing_votes(std::uint64_t round, std::uint64_t completion_rounds,
                                                 const std::vector<std::pair<TransactionId, std::uint64_t>>& first_reported,
                                                 std::vector<std::vector<TransactionId>>& votes);

struct DelayRecord {
  TransactionId id;
  std::uint64_t send_time = 0;
  std::optional<std::uint64_t> emit_time;
  bool within_bound = false;
};

struct LivenessReport {
  /// (n+1)*delta + 2*round_len, or (k+2)*delta + 2*round_len with rounding.
  std::uint64_t bound = 0;
  std::vector<DelayRecord> records;
  std::size_t late = 0;
  std::size_t never_emitted = 0;

  bool ok() const noexcept { return late == 0 && never_emitted == 0; }
  std::uint64_t max_delay() const;
};

std::uint64_t liveness_bound(const ScenarioConfig& config);
LivenessReport measure_liveness(const SimTrace& trace);

}  // namespace fairorder
