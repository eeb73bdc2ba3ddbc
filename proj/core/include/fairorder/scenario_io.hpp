#pragma once

#include "fairorder/fairness.hpp"
#include "fairorder/simulation.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fairorder {

// Scenario config is a JSON object:
//   replicas, delta, round_len, completion_rounds, seed, horizon   integers
//   rounding_denominator                                          optional
//   schedule: [{"id": "t1", "send": 0}, ...]
//     or generate: {"count": 20, "max_gap": 6, "prefix": "t"}
//   faults: [{"replica": 1, "kind": "window_shuffle", "window": 3},
//            {"replica": 2, "kind": "targeted_swap", "pairs": [["t1", "t2"]]},
//            {"replica": 3, "kind": "withholder", "victims": ["t4"]}]
// Unlisted replicas are honest. Syntax errors are ParseError, bad values
// InvalidArgumentError.
ScenarioConfig parse_scenario_config(const std::string& json_text);
std::string format_scenario_config(const ScenarioConfig& config);

// Trace export: one `tick<TAB>kind<TAB>payload` event per line, ordered by
// tick. Kinds: scenario (tick 0, key=value settings), send (id), receive
// (replica id), report (replica id), fabricate (replica id), emit (id).
std::string format_trace(const SimTrace& trace);

struct TraceSummary {
  std::size_t replicas = 0;
  std::vector<std::size_t> faulty;
  std::optional<std::uint32_t> rounding_denominator;
  std::vector<std::vector<TransactionId>> received;
  /// Final votes rebuilt from report and fabricate events.
  std::vector<std::vector<TransactionId>> reported;
  std::vector<ScheduledTx> sends;
  std::vector<OutputEvent> output;
  std::size_t fabrications = 0;

  ReceiptProfile profile() const;
  TotalOrder output_order() const;
};

/// Throws ParseError.
TraceSummary parse_trace(const std::string& text);

}  // namespace fairorder
