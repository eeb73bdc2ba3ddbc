#pragma once

#include "fairorder/fairness.hpp"
#include "fairorder/ordering_graph.hpp"
#include "fairorder/simulation.hpp"
#include "fairorder/transaction.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fairorder {

/// Machine-readable command result. Rendering is deterministic: equal inputs
/// and seed give byte-identical JSON. Wall-clock timing is deliberately not
/// part of it.
class RunReport {
 public:
  explicit RunReport(std::string command);
  ~RunReport();
  RunReport(RunReport&&) noexcept;
  RunReport& operator=(RunReport&&) noexcept;

  /// FNV-1a over the concatenated input files.
  void set_inputs_digest(std::uint64_t digest);
  void set_seed(std::uint64_t seed);
  void set_output(const TotalOrder& output);
  void set_status(const std::string& status, int exit_code);
  void set_value(const std::string& key, const std::string& value);
  void set_value(const std::string& key, std::int64_t value);
  void set_value(const std::string& key, bool value);
  /// One record per gamma; violations carry the receipt-count row of the
  /// pair's first transaction.
  void set_audit(const OrderingGraph& receipts, const std::vector<FairnessVerdict>& verdicts);
  void set_liveness(const LivenessReport& report);
  /// Per-invocation emissions of a stream replay.
  void add_invocation(std::size_t index, const TotalOrder& emitted, std::size_t indeterminate_edges);

  std::string to_json() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Human-readable gamma table.
std::string audit_table(const std::vector<FairnessVerdict>& verdicts);
std::string liveness_table(const LivenessReport& report);

std::string hex_digest(std::uint64_t digest);

}  // namespace fairorder
