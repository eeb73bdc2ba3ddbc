#pragma once

#include "fairorder/weight.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fairorder::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInput = 2,
  kFairnessViolation = 3,
  kLivenessViolation = 4,
  kInternalFault = 5,
};

struct OrderArgs {
  std::string votes;
  std::optional<std::uint32_t> round;
  std::string tiebreak = "lex";
  std::string report;
};

struct StreamArgs {
  std::string stream;
  std::string variant = "live";
  std::optional<std::uint32_t> round;
  std::string tiebreak = "lex";
  std::string ledger_in;
  std::string ledger_out;
  std::string report;
};

struct SimulateArgs {
  std::string config;
  std::string trace;
  std::string report;
};

struct AuditArgs {
  std::string receipts;
  std::string output;
  std::string trace;
  std::string delta;
  std::string gamma_grid = "all";
  std::string report;
};

struct OracleArgs {
  std::uint64_t seed = 1;
  std::size_t count = 1000;
  std::optional<std::uint32_t> round;
};

struct FixtureArgs {
  std::string name;
  std::size_t length = 40;
  std::string world = "first";
};

int cmd_order(const OrderArgs& args);
int cmd_stream(const StreamArgs& args);
int cmd_simulate(const SimulateArgs& args);
int cmd_audit(const AuditArgs& args);
int cmd_oracle_check(const OracleArgs& args);
int cmd_fixture(const FixtureArgs& args);

/// "3/5", "0.6", "1". Throws InvalidArgumentError.
Rational parse_rational(const std::string& text);

/// Runs `body`, mapping library exceptions onto exit codes with the message
/// on stderr.
int guarded(const std::function<int()>& body);

}  // namespace fairorder::cli
