// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "fairorder/fairness.hpp"
#include "fairorder/fixtures.hpp"
#include "fairorder/ranked_pairs.hpp"
#include "fairorder/simulation.hpp"
#include "fairorder/streaming.hpp"
#include "fairorder/vote_log.hpp"

#include "generators.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

using namespace fairorder;
using fairorder::testing::Rng;
namespace ft = fairorder::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::size_t position(const TotalOrder& order, const std::string& id) {
  return static_cast<std::size_t>(std::find(order.begin(), order.end(), TransactionId(id)) - order.begin());
}

TransactionId tau(std::size_t i) { return TransactionId("t" + std::to_string(i)); }

std::vector<TotalOrder> permutations(TotalOrder ids) {
  std::sort(ids.begin(), ids.end());
  std::vector<TotalOrder> out;
  do out.push_back(ids);
  while (std::next_permutation(ids.begin(), ids.end()));
  return out;
}

// 1. Interleaved cycles: t5 < t1 < t4 < t8, exact, under one second.
Outcome interleaved_cycles() {
  const auto path = std::filesystem::path(FAIRORDER_DATA_DIR) / "interleaved_cycles.votes";
  const auto start = Clock::now();
  const auto votes = parse_vote_log(read_text_file(path));
  const auto order = ranked_pairs(votes);
  const auto elapsed = seconds_since(start);
  const bool shape = position(order, "t5") < position(order, "t1") && position(order, "t1") < position(order, "t4") &&
                     position(order, "t4") < position(order, "t8");
  const bool oracle = order == ft::naive_ranked_pairs(votes);
  const bool fixture = votes == interleaved_cycles_instance();
  std::ostringstream d;
  d << "order";
  for (const auto& t : order) d << ' ' << t.str();
  d << ", matches reference " << (oracle ? "yes" : "no") << ", " << elapsed * 1000 << " ms (limit 1000)";
  return {shape && oracle && fixture && elapsed < 1.0, d.str()};
}

// 2. The three n = 10 instances: exact weights and exact enforcement bands.
Outcome gamma_instances() {
  std::vector<std::string> failures;
  const auto expect_weight = [&](const VoteSet& votes, const char* a, const char* b, std::uint32_t count) {
    const auto g = build_ordering_graph(votes);
    if (g.count(TransactionId(a), TransactionId(b)) != count || g.replica_count() != 10) {
      failures.push_back(std::string("w(") + a + "," + b + ")");
    }
  };
  expect_weight(high_gamma_instance(), "t", "tp", 10);
  expect_weight(high_gamma_instance(), "t1", "t2", 7);
  expect_weight(high_gamma_instance(), "t2", "t", 6);
  expect_weight(high_gamma_instance(), "tp", "t1", 7);
  expect_weight(low_gamma_instance(), "t", "tp", 6);
  expect_weight(low_gamma_instance(), "tp", "t", 4);
  expect_weight(intermediate_gamma_instance(), "t1", "t2", 8);
  expect_weight(intermediate_gamma_instance(), "t2", "t3", 6);
  expect_weight(intermediate_gamma_instance(), "t3", "t1", 6);

  // Which grid points force a before b in every passing output.
  const auto band = [](const VoteSet& votes, const char* a, const char* b) {
    const auto p = honest_profile(votes);
    std::string out;
    for (const auto& gamma : gamma_grid(10)) {
      bool forced = true;
      for (const auto& order : permutations(votes.transactions())) {
        if (audit_pairwise_fairness(p, order, gamma, Rational(0)).pass &&
            position(order, b) < position(order, a)) {
          forced = false;
        }
      }
      out += forced ? '1' : '0';
    }
    return out;
  };
  // Grid 6/10, 7/10, 8/10, 9/10, 1.
  const auto high = band(high_gamma_instance(), "t", "tp");
  const auto low = band(low_gamma_instance(), "t", "tp");
  const auto mid = band(intermediate_gamma_instance(), "t1", "t2");
  if (high != "01111") failures.push_back("high band " + high);
  if (low != "10000") failures.push_back("low band " + low);
  if (mid != "01100") failures.push_back("intermediate band " + mid);

  std::string d = "bands over gamma 6/10..1: high " + high + " (forced above 0.6), low " + low +
                  " (forced up to 0.6), intermediate " + mid + " (forced on (0.6, 0.8])";
  for (const auto& f : failures) d += "; mismatch " + f;
  return {failures.empty(), d};
}

// 3. Alternating swaps: preliminary never emits; live emits every t_i.
Outcome alternating_swaps() {
  std::size_t prelim_emitted = 0;
  std::set<TransactionId> live_seen;
  bool on_time = true;
  StreamState state;
  for (std::size_t length = 4; length <= 40; length += 2) {
    const auto inst = generate_nonlive_instance(length);
    prelim_emitted += stream_step_preliminary(inst.votes, inst.tiebreak).output.size();
    LiveOptions options;
    options.base_order = inst.tiebreak;
    const auto step = stream_step_live(state, inst.votes, options);
    live_seen.insert(step.output.begin(), step.output.end());
    for (std::size_t i = 1; i + 2 <= length; ++i) on_time = on_time && live_seen.contains(tau(i));
  }
  bool all = true;
  for (std::size_t i = 1; i <= 38; ++i) all = all && live_seen.contains(tau(i));
  std::ostringstream d;
  d << "preliminary emitted " << prelim_emitted << " over lengths 4..40; live emitted " << live_seen.size()
    << " (t1..t38 by length 40, each t_i by length i+2: " << (on_time ? "yes" : "no") << ")";
  return {prelim_emitted == 0 && all && on_time, d.str()};
}

// 4. Streaming outputs are prefixes of ranked pairs on random completions.
Outcome prefix_property() {
  Rng rng(0xacce0004);
  const auto start = Clock::now();
  std::size_t instances = 0, completions = 0, failures = 0;
  for (; instances < 1200; ++instances) {
    const auto n = rng.between(3, 7);
    const auto m = rng.between(3, 8);
    const auto receipts = ft::random_receipts(rng, n, m);
    const auto partial = ft::truncate_randomly(rng, receipts);
    const auto prelim = stream_step_preliminary(partial).output;
    StreamState state;
    LiveOptions options;
    options.prune_ledger = false;
    const auto live = stream_step_live(state, partial, options).output;
    for (int c = 0; c < 3; ++c, ++completions) {
      const auto complete = ft::complete_randomly(rng, partial, numbered_ids("t", m));
      const auto fixed = ft::naive_ranked_pairs(complete);
      const auto implied = ft::naive_ranked_pairs(complete.transactions(), ft::naive_implied_order(complete, state.ledger));
      if (!ft::is_prefix(prelim, fixed) || !ft::is_prefix(live, implied)) ++failures;
    }
  }
  const auto elapsed = seconds_since(start);
  std::ostringstream d;
  d << instances << " instances, " << completions << " completions, " << failures << " non-prefix (tolerance 0), "
    << elapsed << " s (limit 60)";
  return {failures == 0 && elapsed < 60, d.str()};
}

// 5. Output logs only grow along extension chains.
Outcome monotonicity() {
  Rng rng(0xacce0005);
  std::size_t chains = 0, failures = 0;
  for (; chains < 600; ++chains) {
    const auto receipts = ft::random_receipts(rng, rng.between(3, 7), rng.between(3, 8));
    StreamState state;
    TotalOrder prelim;
    for (const auto& votes : ft::extension_chain(rng, receipts, 5)) {
      const auto before = state.output;
      const auto live = stream_step_live(state, votes).output;
      const auto next = stream_step_preliminary(votes, {}, std::nullopt, prelim).output;
      if (!ft::is_prefix(before, live) || !ft::is_prefix(prelim, next)) ++failures;
      prelim = next;
    }
  }
  std::ostringstream d;
  d << chains << " chains of 5 invocations, " << failures << " shrinking logs (tolerance 0)";
  return {failures == 0, d.str()};
}

// 6. Fairness for every gamma with up to two replaced votes.
Outcome fairness_all_gamma() {
  Rng rng(0xacce0006);
  std::size_t instances = 0, audits = 0, failures = 0;
  for (; instances < 600; ++instances) {
    const auto f = rng.below(3);
    const auto n = rng.between(std::max<std::size_t>(3, 2 * f + 1), 7);
    const auto m = rng.between(3, 8);
    const auto received = ft::random_receipts(rng, n, m);
    const auto reported = ft::corrupt_votes(rng, received, f);
    ReceiptProfile p{received, {}, VoteSet(reported)};
    for (std::size_t k = 0; k < f; ++k) p.faulty.push_back(n - f + k);
    const Rational delta(static_cast<std::int64_t>(f), static_cast<std::int64_t>(n));
    const auto partial = ft::truncate_randomly(rng, reported);

    const auto check = [&](const TotalOrder& out, Rational d) {
      for (const auto& v : audit_all_gamma(p, out, d)) {
        ++audits;
        if (!v.pass || !ft::naive_fair(received, out, v.gamma, d)) ++failures;
      }
    };
    check(ranked_pairs(p.reported), delta);
    StreamState state;
    check(stream_step_live(state, partial).output, delta);
    for (std::uint32_t k : {2u, 4u}) {
      const Rational dk = delta + Rational(1, 2 * static_cast<std::int64_t>(k));
      check(ranked_pairs(round_graph(build_ordering_graph(p.reported), k)), dk);
      StreamState rounded;
      LiveOptions options;
      options.rounding = k;
      check(stream_step_live(rounded, partial, options).output, dk);
    }
  }
  std::ostringstream d;
  d << instances << " instances (f in 0..2, rounding none/2/4), " << audits << " gamma audits, " << failures
    << " violations (tolerance 0)";
  return {failures == 0, d.str()};
}

// 7. Delays within (n+1)delta + 2 round_len, or (k+2)delta + 2 round_len.
Outcome liveness() {
  Rng rng(0xacce0007);
  std::size_t runs = 0, rounded = 0, late = 0;
  double worst_ratio = 0;
  for (; runs < 150; ++runs) {
    ScenarioConfig c;
    c.replicas = rng.between(1, 7);
    c.delta = rng.between(1, 20);
    c.round_len = rng.between(1, c.delta);
    c.completion_rounds = (c.delta + c.round_len - 1) / c.round_len;
    c.seed = rng.next();
    c.schedule = generate_schedule(rng.between(1, 15), rng.between(0, 2 * c.delta), rng.next());
    if (runs % 3 == 2) {
      c.rounding_denominator = static_cast<std::uint32_t>(rng.between(1, 4));
      ++rounded;
    }
    c.horizon = c.schedule.back().send_time + liveness_bound(c) + c.round_len;
    const auto report = measure_liveness(run_simulation(c));
    late += report.late + report.never_emitted;
    worst_ratio = std::max(worst_ratio, static_cast<double>(report.max_delay()) / static_cast<double>(report.bound));
  }
  std::ostringstream d;
  d << runs << " simulations (" << rounded << " rounded, n<=7, delta<=20), " << late
    << " late or unemitted, worst delay/bound " << worst_ratio;
  return {late == 0, d.str()};
}

// 8. Restricting votes to an output prefix reproduces the prefix.
Outcome truncation() {
  Rng rng(0xacce0008);
  std::size_t instances = 0, prefixes = 0, failures = 0;
  for (; instances < 600; ++instances) {
    const VoteSet votes(ft::random_receipts(rng, rng.between(1, 7), rng.between(1, 8)));
    const auto order = ranked_pairs(votes);
    for (std::size_t len = 0; len <= order.size(); ++len, ++prefixes) {
      const TotalOrder prefix(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(len));
      if (ranked_pairs(restrict_votes(votes, prefix)) != prefix) ++failures;
    }
  }
  std::ostringstream d;
  d << instances << " instances, " << prefixes << " prefixes, " << failures << " mismatches (tolerance 0)";
  return {failures == 0, d.str()};
}

// 9. Rejections carry reverse paths; indeterminate edges carry chains.
Outcome witnesses() {
  Rng rng(0xacce0009);
  std::size_t rejections = 0, bad_rejections = 0, chains = 0, bad_chains = 0, longest = 0;
  for (int trial = 0; trial < 800; ++trial) {
    const auto n = rng.between(2, 7);
    const auto receipts = ft::random_receipts(rng, n, rng.between(2, 8));
    const auto g = build_ordering_graph(VoteSet(receipts));
    const auto trace = ranked_pairs_traced(g);
    for (const auto& dcs : trace.decisions) {
      if (dcs.accepted) continue;
      ++rejections;
      if (ft::check_rejection(g, trace, dcs)) ++bad_rejections;
    }

    const auto partial = ft::truncate_randomly(rng, receipts);
    StreamState state;
    const auto step = stream_step_live(state, partial);
    const auto sg = build_streamed_graph(partial);
    for (const auto& dcs : step.decisions) {
      if (dcs.status != EdgeStatus::Indeterminate || is_future(dcs.edge.from) || is_future(dcs.edge.to)) continue;
      ++chains;
      const auto chain = indeterminacy_witness(step.decisions, dcs.edge);
      longest = std::max(longest, chain.size());
      if (ft::check_chain(sg, step.decisions, dcs.edge, chain) || chain.size() > n) ++bad_chains;
    }
  }
  std::ostringstream d;
  d << rejections << " rejections (" << bad_rejections << " invalid), " << chains << " indeterminate chains ("
    << bad_chains << " invalid, longest " << longest << " <= n)";
  return {bad_rejections == 0 && bad_chains == 0 && rejections > 0 && chains > 0, d.str()};
}

// 10. Two indistinguishable worlds with no common exactly minimal output.
Outcome impossibility() {
  const auto inst = generate_impossibility_instance(7, Rational(2, 3));
  const bool same = inst.first.reported == inst.second.reported &&
                    format_vote_log(inst.first.reported) == format_vote_log(inst.second.reported);
  std::size_t both = 0, candidates = 0;
  for (const auto& out : permutations(inst.first.received.front())) {
    ++candidates;
    if (audit_exact_minimality(inst.first, out, inst.gamma).pass &&
        audit_exact_minimality(inst.second, out, inst.gamma).pass) {
      ++both;
    }
  }
  std::ostringstream d;
  d << "n=7 gamma=2/3: m=" << inst.threshold << " group " << inst.group_size << " groups " << inst.groups
    << " f=" << inst.faulty << ", reports identical " << (same ? "yes" : "no") << ", " << both << " of " << candidates
    << " outputs minimal in both worlds";
  return {same && both == 0 && inst.threshold == 5 && inst.groups == 2 && inst.faulty == 1, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"interleaved-cycles order", interleaved_cycles},
      {"gamma instances", gamma_instances},
      {"alternating swaps liveness", alternating_swaps},
      {"streaming prefix of ranked pairs", prefix_property},
      {"monotonic output", monotonicity},
      {"fairness for every gamma", fairness_all_gamma},
      {"liveness bound", liveness},
      {"truncation invariance", truncation},
      {"structural witnesses", witnesses},
      {"indistinguishable worlds", impossibility},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu  %-34s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
