#include "fairorder/errors.hpp"
#include "fairorder/fixtures.hpp"
#include "fairorder/reports.hpp"
#include "fairorder/scenario_io.hpp"
#include "fairorder/simulation.hpp"
#include "fairorder/vote_log.hpp"

#include "generators.hpp"

#include <doctest.h>

#include <filesystem>

using namespace fairorder;

namespace {

TransactionId id(const std::string& s) { return TransactionId(s); }

std::string data_file(const std::string& name) { return read_text_file(std::filesystem::path(FAIRORDER_DATA_DIR) / name); }

std::size_t parse_error_line(const std::string& text) {
  try {
    parse_vote_log(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("vote logs") {
  const auto votes = parse_vote_log("# comment\n0: a, b, c\n\n1: b, a  # trailing\n");
  REQUIRE(votes.replica_count() == 2);
  CHECK(votes.votes()[1] == std::vector<TransactionId>{id("b"), id("a")});
  CHECK(format_vote_log(votes) == "0: a, b, c\n1: b, a\n");
  CHECK(parse_vote_log(format_vote_log(votes)) == votes);
  CHECK(parse_vote_log("1: x\n0: y\n").votes()[0] == std::vector<TransactionId>{id("y")});
  CHECK(parse_vote_log("0:\n1: a\n").votes()[0].empty());

  CHECK(parse_error_line("0: a\n1 a b\n") == 2);
  CHECK(parse_error_line("0: a, a\n") == 1);
  CHECK(parse_error_line("0: a,\n") == 1);
  CHECK(parse_error_line("x: a\n") == 1);
  CHECK_THROWS_AS(parse_vote_log("0: a\n0: b\n"), ParseError);
  CHECK_THROWS_AS(parse_vote_log("0: a\n2: b\n"), ParseError);
}

TEST_CASE("vote streams and orders") {
  const auto blocks = parse_vote_stream("0: a\n1: b\n---\n1: b, a\n---\n0: a, b\n");
  REQUIRE(blocks.size() == 3);
  CHECK(blocks[1].votes()[0] == std::vector<TransactionId>{id("a")});
  CHECK(blocks[2].votes()[1] == std::vector<TransactionId>{id("b"), id("a")});
  CHECK(parse_vote_stream(format_vote_stream(blocks)) == blocks);
  CHECK_THROWS_AS(parse_vote_stream("0: a\n---\n3: b\n"), ParseError);
  // Extension is checked by the streaming step, not the parser.
  const auto reordered = parse_vote_stream("0: a\n1: b\n---\n0: b\n");
  CHECK_THROWS_AS(reordered[1].require_extends(reordered[0]), PrefixViolationError);

  const auto order = parse_order("x\n# skip\ny\n");
  CHECK(order == std::vector<TransactionId>{id("x"), id("y")});
  CHECK(format_order(order) == "x\ny\n");
  CHECK(parse_order("").empty());
  CHECK_THROWS_AS(parse_order("x\nx\n"), ParseError);
}

TEST_CASE("data files match the built-in fixtures") {
  CHECK(parse_vote_log(data_file("interleaved_cycles.votes")) == interleaved_cycles_instance());
  CHECK(parse_vote_log(data_file("high_gamma.votes")) == high_gamma_instance());
  CHECK(parse_vote_log(data_file("low_gamma.votes")) == low_gamma_instance());
  CHECK(parse_vote_log(data_file("intermediate_gamma.votes")) == intermediate_gamma_instance());
  const auto stream = parse_vote_stream(data_file("alternating_swaps.stream"));
  REQUIRE(stream.size() == 19);
  for (std::size_t i = 0; i < stream.size(); ++i) CHECK(stream[i] == generate_nonlive_instance(4 + 2 * i).votes);
  for (const char* name : {"honest4.json", "targeted_swap7.json", "mixed_faults.json", "short_horizon.json"}) {
    CHECK_NOTHROW(parse_scenario_config(data_file(name)));
  }
}

TEST_CASE("scenario configs") {
  const auto c = parse_scenario_config(R"({
    "replicas": 5, "delta": 6, "round_len": 3, "completion_rounds": 2, "seed": 42, "horizon": 90,
    "rounding_denominator": 3,
    "schedule": [{"id": "a", "send": 0}, {"id": "b", "send": 4}],
    "faults": [{"replica": 1, "kind": "window_shuffle", "window": 2},
               {"replica": 2, "kind": "targeted_swap", "pairs": [["a", "b"]]},
               {"replica": 4, "kind": "withholder", "victims": ["b"]}]
  })");
  CHECK(c.replicas == 5);
  CHECK(c.rounding_denominator == 3u);
  REQUIRE(c.faults.size() == 5);
  CHECK(c.faults[0].honest());
  CHECK(c.faults[1].window == 2);
  CHECK(c.faults[2].pairs.front() == std::pair{id("a"), id("b")});
  CHECK(c.faults[4].victims == std::vector<TransactionId>{id("b")});
  CHECK(faulty_replicas(c) == std::vector<std::size_t>{1, 2, 4});

  const auto again = parse_scenario_config(format_scenario_config(c));
  CHECK(format_scenario_config(again) == format_scenario_config(c));

  const auto gen = parse_scenario_config(R"({"seed": 5, "generate": {"count": 6, "max_gap": 3}})");
  CHECK(gen.schedule.size() == 6);
  CHECK(gen.schedule[5].id == id("t6"));

  try {
    parse_scenario_config("{\n  \"replicas\": 4,\n  oops\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_scenario_config(R"({"replicaz": 4})"), InvalidArgumentError);
  CHECK_THROWS_AS(parse_scenario_config(R"({"replicas": "four"})"), InvalidArgumentError);
  CHECK_THROWS_AS(parse_scenario_config(R"({"faults": [{"replica": 9, "kind": "withholder"}]})"), InvalidArgumentError);
  CHECK_THROWS_AS(parse_scenario_config(R"({"faults": [{"replica": 0, "kind": "liar"}]})"), InvalidArgumentError);
  CHECK_THROWS_AS(parse_scenario_config(R"({"delta": 50})"), InvalidArgumentError);
  CHECK_THROWS_AS(parse_scenario_config("[1, 2]"), ParseError);
}

TEST_CASE("trace export round trip") {
  auto c = parse_scenario_config(data_file("mixed_faults.json"));
  const auto trace = run_simulation(c);
  const auto text = format_trace(trace);
  const auto summary = parse_trace(text);
  CHECK(summary.replicas == c.replicas);
  CHECK(summary.faulty == faulty_replicas(c));
  CHECK(summary.rounding_denominator == c.rounding_denominator);
  CHECK(summary.output_order() == trace.output_order());
  CHECK(summary.fabrications == trace.fabrications.size());
  const auto p = trace.profile();
  const auto q = summary.profile();
  CHECK(q.received == p.received);
  CHECK(q.reported == p.reported);
  CHECK(q.faulty == p.faulty);

  CHECK_THROWS_AS(parse_trace(""), ParseError);
  CHECK_THROWS_AS(parse_trace("0\tsend\ta\n"), ParseError);
  CHECK_THROWS_AS(parse_trace("0\tscenario\treplicas=2\n1\tjump\ta\n"), ParseError);
}

TEST_CASE("reports are deterministic") {
  const auto c = parse_scenario_config(data_file("honest4.json"));
  const auto render = [&] {
    const auto trace = run_simulation(c);
    RunReport r("simulate");
    r.set_seed(c.seed);
    r.set_output(trace.output_order());
    const auto receipts = receipt_graph(trace.profile());
    r.set_audit(receipts, audit_all_gamma(trace.profile(), trace.output_order(), 0));
    r.set_liveness(measure_liveness(trace));
    r.set_status("ok", 0);
    return r.to_json();
  };
  const auto a = render();
  CHECK(a == render());
  CHECK(a.find("\"command\": \"simulate\"") != std::string::npos);
  CHECK(a.find("elapsed") == std::string::npos);
  CHECK(hex_digest(0xcbf29ce484222325ULL) == "cbf29ce484222325");
}
