#include "fairorder/errors.hpp"
#include "fairorder/fairness.hpp"
#include "fairorder/scenario_io.hpp"
#include "fairorder/simulation.hpp"
#include "fairorder/streamed_graph.hpp"

#include "generators.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>

using namespace fairorder;
using fairorder::testing::Rng;

namespace {

TransactionId id(const std::string& s) { return TransactionId(s); }

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

/// Random valid scenario whose horizon leaves every transaction time to be
/// emitted.
ScenarioConfig random_scenario(Rng& rng, bool with_faults) {
  ScenarioConfig c;
  c.replicas = rng.between(1, 7);
  c.delta = rng.between(1, 20);
  c.round_len = rng.between(1, c.delta);
  c.completion_rounds = ceil_div(c.delta, c.round_len) + rng.below(2);
  c.seed = rng.next();
  c.schedule = generate_schedule(rng.between(1, 12), rng.between(0, 2 * c.delta), rng.next());
  if (rng.chance(1, 3)) c.rounding_denominator = static_cast<std::uint32_t>(rng.between(2, 4));
  if (with_faults && c.replicas >= 3) {
    c.faults.assign(c.replicas, FaultStrategy{});
    const auto f = rng.between(1, (c.replicas - 1) / 2);
    for (std::size_t k = 0; k < f; ++k) {
      auto& s = c.faults[c.replicas - 1 - k];
      const auto& sched = c.schedule;
      switch (rng.below(3)) {
        case 0:
          s.kind = FaultStrategy::Kind::WindowShuffle;
          s.window = rng.between(2, 4);
          break;
        case 1:
          s.kind = FaultStrategy::Kind::TargetedSwap;
          if (sched.size() >= 2) {
            const auto a = rng.below(sched.size() - 1);
            s.pairs.emplace_back(sched[a].id, sched[rng.between(a + 1, sched.size() - 1)].id);
          }
          break;
        default:
          s.kind = FaultStrategy::Kind::Withholder;
          s.victims.push_back(sched[rng.below(sched.size())].id);
          break;
      }
    }
  }
  c.horizon = c.schedule.back().send_time + liveness_bound(c) + c.round_len;
  return c;
}

Rational fairness_delta(const ScenarioConfig& c) {
  Rational d(static_cast<std::int64_t>(faulty_replicas(c).size()), static_cast<std::int64_t>(c.replicas));
  if (c.rounding_denominator) d += Rational(1, 2 * static_cast<std::int64_t>(*c.rounding_denominator));
  return d;
}

}  // namespace

TEST_CASE("config validation") {
  ScenarioConfig c;
  CHECK_NOTHROW(validate(c));
  c.delta = 0;
  CHECK_THROWS_AS(validate(c), InvalidArgumentError);
  c = {};
  c.completion_rounds = 1;
  CHECK_THROWS_AS(validate(c), InvalidArgumentError);
  c = {};
  c.schedule = {{0, id("a")}, {3, id("a")}};
  CHECK_THROWS_AS(validate(c), InvalidArgumentError);
  c = {};
  c.schedule = {{500, id("a")}};
  CHECK_THROWS_AS(validate(c), InvalidArgumentError);
  c = {};
  c.faults.resize(2);
  CHECK_THROWS_AS(validate(c), InvalidArgumentError);
  c = {};
  c.rounding_denominator = 0;
  CHECK_THROWS_AS(validate(c), InvalidArgumentError);
}

TEST_CASE("generate_schedule") {
  const auto s = generate_schedule(5, 4, 9);
  REQUIRE(s.size() == 5);
  CHECK(s.front().send_time == 0);
  CHECK(s.front().id == id("t1"));
  for (std::size_t i = 1; i < s.size(); ++i) {
    CHECK(s[i].send_time >= s[i - 1].send_time);
    CHECK(s[i].send_time - s[i - 1].send_time <= 4);
  }
  CHECK(generate_schedule(5, 4, 9, "x").back().id == id("x5"));
  CHECK(generate_schedule(0, 4, 9).empty());
}

TEST_CASE("simulation examples") {
  SUBCASE("empty schedule") {
    const auto trace = run_simulation(ScenarioConfig{});
    CHECK(trace.output.empty());
    CHECK(trace.fabrications.empty());
    CHECK(measure_liveness(trace).records.empty());
    CHECK(measure_liveness(trace).ok());
  }
  SUBCASE("single transaction, three honest replicas") {
    ScenarioConfig c;
    c.replicas = 3;
    c.schedule = {{7, id("a")}};
    const auto trace = run_simulation(c);
    REQUIRE(trace.output.size() == 1);
    CHECK(trace.output[0].tick - 7 <= (c.replicas + 1) * c.delta + c.round_len);
  }
  SUBCASE("transactions sent more than delta apart keep send order") {
    ScenarioConfig c;
    c.replicas = 5;
    c.schedule = {{20, id("b")}, {20 + c.delta + 1, id("a")}};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      c.seed = seed;
      const auto trace = run_simulation(c);
      for (const auto& votes : trace.rounds) {
        const auto g = build_streamed_graph(votes.votes);
        if (g.settled.size() == 2) CHECK(g.settled.weight(id("b"), id("a")) == Weight(1, 1));
      }
      CHECK(trace.output_order() == std::vector<TransactionId>{id("b"), id("a")});
    }
  }
  SUBCASE("horizon too short leaves transactions unemitted") {
    ScenarioConfig c;
    c.schedule = {{0, id("a")}, {38, id("b")}};
    c.horizon = 40;
    const auto report = measure_liveness(run_simulation(c));
    CHECK(report.never_emitted >= 1);
    CHECK_FALSE(report.ok());
  }
}

TEST_CASE("completion rule") {
  SUBCASE("withheld transactions are appended in digest order") {
    std::vector<std::vector<TransactionId>> votes{{id("a"), id("b"), id("c")}, {}};
    const std::vector<std::pair<TransactionId, std::uint64_t>> first{{id("a"), 1}, {id("b"), 1}, {id("c"), 3}};
    const auto made = fabricate_missing_votes(3, 2, first, votes);
    auto expected = std::vector<TransactionId>{id("a"), id("b")};
    if (id("b").digest() < id("a").digest()) std::swap(expected[0], expected[1]);
    CHECK(votes[1] == expected);
    REQUIRE(made.size() == 2);
    CHECK(made[0].replica == 1);
    CHECK(made[0].round == 3);
    // Reversing the first-report order does not change the result.
    std::vector<std::vector<TransactionId>> again{{id("a"), id("b")}, {}};
    fabricate_missing_votes(3, 2, {{id("b"), 0}, {id("a"), 1}}, again);
    CHECK(again[1] == expected);
  }
  SUBCASE("nothing is due before completion_rounds have passed") {
    std::vector<std::vector<TransactionId>> votes{{id("a")}, {}};
    CHECK(fabricate_missing_votes(2, 2, {{id("a"), 1}}, votes).empty());
    CHECK(votes[1].empty());
  }
  SUBCASE("a withholder has its victim appended after completion_rounds") {
    ScenarioConfig c;
    c.schedule = {{0, id("t1")}, {3, id("t2")}, {9, id("t3")}};
    c.faults.assign(4, FaultStrategy{});
    c.faults[2].kind = FaultStrategy::Kind::Withholder;
    c.faults[2].victims = {id("t2")};
    const auto trace = run_simulation(c);
    REQUIRE(trace.fabrications.size() == 1);
    const auto& f = trace.fabrications[0];
    CHECK(f.replica == 2);
    CHECK(f.id == id("t2"));
    std::uint64_t first = 0;
    for (const auto& r : trace.rounds) {
      const auto& v = r.votes.votes();
      if (std::any_of(v.begin(), v.end(), [](const auto& s) { return std::find(s.begin(), s.end(), TransactionId("t2")) != s.end(); })) {
        first = r.round;
        break;
      }
    }
    CHECK(f.round == first + c.completion_rounds);
    CHECK(measure_liveness(trace).ok());
  }
}

TEST_CASE("property: deterministic, synchronous and fabrication free when honest") {
  Rng rng(0x5eed0301);
  for (int trial = 0; trial < 60; ++trial) {
    const auto c = random_scenario(rng, false);
    const auto a = run_simulation(c);
    const auto b = run_simulation(c);
    REQUIRE(format_trace(a) == format_trace(b));
    CHECK(a.fabrications.empty());

    std::map<TransactionId, std::uint64_t> sent;
    for (const auto& s : c.schedule) sent[s.id] = s.send_time;
    for (const auto& per_replica : a.receipts) {
      REQUIRE(per_replica.size() == c.schedule.size());
      for (const auto& r : per_replica) {
        REQUIRE(r.tick >= sent[r.id]);
        REQUIRE(r.tick < sent[r.id] + c.delta);
      }
    }
  }
  ScenarioConfig c;
  c.schedule = generate_schedule(10, 5, 1);
  auto other = c;
  other.seed = 1;
  CHECK(format_trace(run_simulation(c)) != format_trace(run_simulation(other)));
}

TEST_CASE("property: far-apart transactions have weight one and locality stays in its window") {
  Rng rng(0x5eed0302);
  for (int trial = 0; trial < 60; ++trial) {
    const auto c = random_scenario(rng, false);
    const auto trace = run_simulation(c);
    std::map<TransactionId, std::uint64_t> sent;
    for (const auto& s : c.schedule) sent[s.id] = s.send_time;
    for (const auto& round : trace.rounds) {
      const auto g = build_streamed_graph(round.votes);
      const auto& s = g.settled;
      for (std::size_t a = 0; a < s.size(); ++a) {
        for (std::size_t b = 0; b < s.size(); ++b) {
          if (a == b) continue;
          const auto ta = sent[s.id(a)];
          const auto tb = sent[s.id(b)];
          if (tb > ta + c.delta) REQUIRE(s.raw_weight(a, b).is_one());
          // Unanimous edges are accepted outright; their locality set only
          // carries the endpoints, which may be arbitrarily far apart.
          if (s.count(a, b) == 0 || s.unanimous(a, b)) continue;
          for (const auto& x : locality_set(g, {s.id(a), s.id(b)}).transactions) {
            const auto tx = sent[x];
            REQUIRE(tx + c.delta >= tb);
            REQUIRE(tx <= tb + 2 * c.delta);
          }
        }
      }
    }
  }
}

TEST_CASE("property: liveness bound and end-to-end fairness") {
  Rng rng(0x5eed0303);
  std::size_t runs = 0, faulty_runs = 0;
  std::uint64_t worst = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const bool faults = trial % 2 == 1;
    const auto c = random_scenario(rng, faults);
    const auto trace = run_simulation(c);
    const auto live = measure_liveness(trace);
    INFO("seed " << c.seed << " n " << c.replicas << " delta " << c.delta << " round " << c.round_len);
    REQUIRE(live.ok());
    worst = std::max(worst, live.max_delay());
    for (const auto& v : audit_all_gamma(trace.profile(), trace.output_order(), fairness_delta(c))) REQUIRE(v.pass);
    ++runs;
    if (!faulty_replicas(c).empty()) ++faulty_runs;
  }
  CHECK(runs == 120);
  CHECK(faulty_runs > 0);
}

TEST_CASE("one targeted swapper among seven stays fair at 1/7") {
  ScenarioConfig c;
  c.replicas = 7;
  c.schedule = generate_schedule(16, 4, 5);
  c.faults.assign(7, FaultStrategy{});
  c.faults[6].kind = FaultStrategy::Kind::TargetedSwap;
  c.faults[6].pairs = {{id("t2"), id("t5")}, {id("t7"), id("t9")}};
  c.horizon = 400;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    c.seed = seed;
    const auto trace = run_simulation(c);
    CHECK(measure_liveness(trace).ok());
    for (const auto& v : audit_all_gamma(trace.profile(), trace.output_order(), Rational(1, 7))) CHECK(v.pass);
  }
}
