#include "commands.hpp"

#include <CLI11.hpp>

namespace cli = fairorder::cli;

int main(int argc, char** argv) {
  CLI::App app{"Fair transaction ordering: ranked pairs, streaming, audits and simulation"};
  app.require_subcommand(1);

  cli::OrderArgs order;
  auto* o = app.add_subcommand("order", "Rank complete votes and print one id per line");
  o->add_option("votes", order.votes, "Vote log")->required()->check(CLI::ExistingFile);
  o->add_option("--round", order.round, "Round weights to the nearest 1/k")->check(CLI::PositiveNumber);
  o->add_option("--tiebreak", order.tiebreak, "lex or adversarial-swap")->capture_default_str();
  o->add_option("--report", order.report, "Write a JSON report");

  cli::StreamArgs stream;
  auto* s = app.add_subcommand("stream", "Replay a vote stream and print emissions per invocation");
  s->add_option("stream", stream.stream, "Vote stream")->required()->check(CLI::ExistingFile);
  s->add_option("--variant", stream.variant, "live or preliminary")->capture_default_str();
  s->add_option("--round", stream.round, "Round weights to the nearest 1/k")->check(CLI::PositiveNumber);
  s->add_option("--tiebreak", stream.tiebreak, "lex or adversarial-swap")->capture_default_str();
  s->add_option("--ledger-in", stream.ledger_in, "Resume from a ledger snapshot")->check(CLI::ExistingFile);
  s->add_option("--ledger-out", stream.ledger_out, "Write the final ledger snapshot");
  s->add_option("--report", stream.report, "Write a JSON report");

  cli::SimulateArgs sim;
  auto* m = app.add_subcommand("simulate", "Run a scenario, audit its output and measure delays");
  m->add_option("config", sim.config, "Scenario JSON")->required()->check(CLI::ExistingFile);
  m->add_option("--trace", sim.trace, "Write the event trace");
  m->add_option("--report", sim.report, "Write a JSON report");

  cli::AuditArgs audit;
  auto* a = app.add_subcommand("audit", "Audit an output against true receipt orders for every gamma");
  a->add_option("receipts", audit.receipts, "Receipt orders as a vote log");
  a->add_option("output", audit.output, "Output order, one id per line");
  a->add_option("--trace", audit.trace, "Audit a simulation trace instead")->check(CLI::ExistingFile);
  a->add_option("--delta", audit.delta, "Slack, e.g. 1/7 (default 0, or f/n for a trace)");
  a->add_option("--gamma-grid", audit.gamma_grid, "all, or a comma list such as 3/5,7/10")->capture_default_str();
  a->add_option("--report", audit.report, "Write a JSON report");

  cli::OracleArgs oracle;
  auto* c = app.add_subcommand("oracle-check", "Compare streaming output with ranked pairs on random instances");
  c->add_option("--seed", oracle.seed)->capture_default_str();
  c->add_option("--count", oracle.count)->capture_default_str();
  c->add_option("--round", oracle.round, "Round weights to the nearest 1/k")->check(CLI::PositiveNumber);

  cli::FixtureArgs fixture;
  auto* f = app.add_subcommand("fixture", "Print a built-in instance");
  f->add_option("name", fixture.name,
                "interleaved-cycles, high-gamma, low-gamma, intermediate-gamma, alternating-swaps, "
                "indistinguishable-worlds")
      ->required();
  f->add_option("--length", fixture.length, "Longest truncation for alternating-swaps")->capture_default_str();
  f->add_option("--world", fixture.world, "first or second")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kUsage;
  }

  if (o->parsed()) return cli::guarded([&] { return cli::cmd_order(order); });
  if (s->parsed()) return cli::guarded([&] { return cli::cmd_stream(stream); });
  if (m->parsed()) return cli::guarded([&] { return cli::cmd_simulate(sim); });
  if (a->parsed()) return cli::guarded([&] { return cli::cmd_audit(audit); });
  if (c->parsed()) return cli::guarded([&] { return cli::cmd_oracle_check(oracle); });
  return cli::guarded([&] { return cli::cmd_fixture(fixture); });
}
