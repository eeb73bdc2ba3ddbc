#include "commands.hpp"

#include "fairorder/errors.hpp"
#include "fairorder/fairness.hpp"
#include "fairorder/fixtures.hpp"
#include "fairorder/ledger.hpp"
#include "fairorder/ranked_pairs.hpp"
#include "fairorder/reports.hpp"
#include "fairorder/scenario_io.hpp"
#include "fairorder/simulation.hpp"
#include "fairorder/streaming.hpp"
#include "fairorder/vote_log.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <iostream>
#include <random>
#include <sstream>
#include <unordered_set>

namespace fairorder::cli {

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  // Timing stays on stderr so reports remain byte-identical across runs.
  ~Stopwatch() {
    const auto us = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start_);
    std::cerr << "elapsed " << us.count() / 1000.0 << " ms\n";
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

EdgeTiebreak tiebreak_named(const std::string& name) {
  if (name == "lex" || name == "lexicographic") return {};
  if (name == "adversarial-swap") return adjacent_swap_tiebreak();
  throw InvalidArgumentError("unknown tiebreak '" + name + "' (lex, adversarial-swap)");
}

std::uint64_t digest_of(const std::vector<std::string>& texts) {
  std::string all;
  for (const auto& t : texts) all += t;
  return fnv1a64(all);
}

void write_report(const std::string& path, const RunReport& report) {
  if (!path.empty()) write_text_file(path, report.to_json());
}

std::vector<Rational> parse_grid(const std::string& text, std::size_t replicas) {
  if (text.empty() || text == "all") return gamma_grid(replicas);
  std::vector<Rational> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto g = parse_rational(item);
    if (g <= Rational(1, 2) || g > Rational(1)) throw InvalidArgumentError("gamma " + item + " outside (1/2, 1]");
    out.push_back(g);
  }
  return out;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto bad = [&] { return InvalidArgumentError("cannot read '" + text + "' as a fraction"); };
  const auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size() || s.empty()) throw bad();
    return v;
  };
  const std::string_view s(text);
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto den = parse_int(s.substr(slash + 1));
    if (den == 0) throw bad();
    return {parse_int(s.substr(0, slash)), den};
  }
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const auto frac = s.substr(dot + 1);
    if (frac.empty() || frac.size() > 12) throw bad();
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const auto whole = dot == 0 ? 0 : parse_int(s.substr(0, dot));
    return {whole * scale + parse_int(frac), scale};
  }
  return {parse_int(s), 1};
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const PrefixViolationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const InternalFault& e) {
    std::cerr << "internal fault: " << e.what() << "\n";
    return kInternalFault;
  } catch (const std::exception& e) {
    std::cerr << "internal fault: " << e.what() << "\n";
    return kInternalFault;
  }
}

int cmd_order(const OrderArgs& args) {
  Stopwatch timer;
  const auto text = read_text_file(args.votes);
  const auto votes = parse_vote_log(text);
  votes.require_complete();
  auto graph = build_ordering_graph(votes);
  if (args.round) graph = round_graph(graph, *args.round);
  const auto order = ranked_pairs(graph, tiebreak_named(args.tiebreak));
  std::cout << format_order(order);

  RunReport report("order");
  report.set_inputs_digest(digest_of({text}));
  report.set_value("tiebreak", args.tiebreak);
  if (args.round) report.set_value("rounding_denominator", static_cast<std::int64_t>(*args.round));
  report.set_output(order);
  report.set_status("ok", kOk);
  write_report(args.report, report);
  return kOk;
}

int cmd_stream(const StreamArgs& args) {
  Stopwatch timer;
  if (args.variant != "live" && args.variant != "preliminary") {
    throw InvalidArgumentError("unknown variant '" + args.variant + "' (live, preliminary)");
  }
  const auto text = read_text_file(args.stream);
  const auto invocations = parse_vote_stream(text);
  const auto tiebreak = tiebreak_named(args.tiebreak);

  StreamState state;
  if (!args.ledger_in.empty()) {
    auto snap = parse_ledger_snapshot(read_text_file(args.ledger_in));
    state.ledger = std::move(snap.ledger);
    state.output = std::move(snap.output);
  }
  LiveOptions options;
  options.rounding = args.round;
  options.base_order = tiebreak;

  RunReport report("stream");
  report.set_inputs_digest(digest_of({text}));
  report.set_value("variant", args.variant);
  report.set_value("tiebreak", args.tiebreak);
  if (args.round) report.set_value("rounding_denominator", static_cast<std::int64_t>(*args.round));

  const VoteSet* previous = nullptr;
  for (std::size_t i = 0; i < invocations.size(); ++i) {
    const auto& votes = invocations[i];
    StreamStep step;
    if (args.variant == "live") {
      step = stream_step_live(state, votes, options);
    } else {
      if (previous) votes.require_extends(*previous);
      step = stream_step_preliminary(votes, tiebreak, args.round, state.output);
      state.output = step.output;
    }
    previous = &votes;
    std::size_t indeterminate = 0;
    for (const auto& d : step.decisions) {
      if (d.status == EdgeStatus::Indeterminate && !is_future(d.edge.to)) ++indeterminate;
    }
    for (const auto& id : step.emitted) std::cout << i + 1 << "\t" << id.str() << "\n";
    report.add_invocation(i + 1, step.emitted, indeterminate);
  }
  if (!args.ledger_out.empty()) write_text_file(args.ledger_out, format_ledger_snapshot(state.ledger, state.output));

  report.set_output(state.output);
  report.set_status("ok", kOk);
  write_report(args.report, report);
  return kOk;
}

int cmd_simulate(const SimulateArgs& args) {
  Stopwatch timer;
  const auto text = read_text_file(args.config);
  const auto config = parse_scenario_config(text);
  const auto trace = run_simulation(config);
  if (!args.trace.empty()) write_text_file(args.trace, format_trace(trace));

  const auto profile = trace.profile();
  const auto output = trace.output_order();
  Rational delta(static_cast<std::int64_t>(profile.faulty.size()), static_cast<std::int64_t>(config.replicas));
  if (config.rounding_denominator) delta += Rational(1, 2 * static_cast<std::int64_t>(*config.rounding_denominator));
  const auto receipts = receipt_graph(profile);
  const auto verdicts = audit_all_gamma(receipts, output, delta, gamma_grid(config.replicas));
  const auto liveness = measure_liveness(trace);

  std::cout << "output";
  for (const auto& id : output) std::cout << ' ' << id.str();
  std::cout << "\n\n" << audit_table(verdicts) << "\n" << liveness_table(liveness);

  const bool fair = std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.pass; });
  const int code = !fair ? kFairnessViolation : !liveness.ok() ? kLivenessViolation : kOk;

  RunReport report("simulate");
  report.set_inputs_digest(digest_of({text}));
  report.set_seed(config.seed);
  report.set_output(output);
  report.set_value("fabrications", static_cast<std::int64_t>(trace.fabrications.size()));
  report.set_audit(receipts, verdicts);
  report.set_liveness(liveness);
  report.set_status(code == kOk ? "ok" : code == kFairnessViolation ? "fairness violation" : "liveness violation", code);
  write_report(args.report, report);
  return code;
}

int cmd_audit(const AuditArgs& args) {
  Stopwatch timer;
  ReceiptProfile profile;
  TotalOrder output;
  Rational delta(0);
  std::vector<std::string> inputs;

  if (!args.trace.empty()) {
    if (!args.receipts.empty() || !args.output.empty()) {
      throw InvalidArgumentError("give either --trace or receipt and output files");
    }
    inputs.push_back(read_text_file(args.trace));
    const auto summary = parse_trace(inputs.back());
    profile = summary.profile();
    output = summary.output_order();
    delta = Rational(static_cast<std::int64_t>(summary.faulty.size()), static_cast<std::int64_t>(summary.replicas));
    if (summary.rounding_denominator) {
      delta += Rational(1, 2 * static_cast<std::int64_t>(*summary.rounding_denominator));
    }
  } else {
    if (args.receipts.empty() || args.output.empty()) throw InvalidArgumentError("audit needs receipts and output files");
    inputs.push_back(read_text_file(args.receipts));
    inputs.push_back(read_text_file(args.output));
    const auto received = parse_vote_log(inputs[0]);
    received.require_complete();
    profile = honest_profile(received);
    output = parse_order(inputs[1]);
  }
  if (!args.delta.empty()) delta = parse_rational(args.delta);
  if (delta < Rational(0)) throw InvalidArgumentError("delta must not be negative");

  const auto receipts = receipt_graph(profile);
  const auto verdicts = audit_all_gamma(receipts, output, delta, parse_grid(args.gamma_grid, profile.replica_count()));
  std::cout << audit_table(verdicts);

  const bool fair = std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.pass; });
  const int code = fair ? kOk : kFairnessViolation;
  RunReport report("audit");
  report.set_inputs_digest(digest_of(inputs));
  report.set_output(output);
  report.set_audit(receipts, verdicts);
  report.set_status(fair ? "ok" : "fairness violation", code);
  write_report(args.report, report);
  return code;
}

namespace {

// Generation for oracle-check. Raw engine output only, so instances are the
// same on every standard library.
struct InstanceRng {
  std::mt19937_64 engine;
  std::size_t below(std::size_t bound) { return bound == 0 ? 0 : static_cast<std::size_t>(engine() % bound); }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }
};

}  // namespace

int cmd_oracle_check(const OracleArgs& args) {
  Stopwatch timer;
  InstanceRng rng{std::mt19937_64(args.seed)};
  std::size_t mismatches = 0, invocations = 0;

  for (std::size_t trial = 0; trial < args.count; ++trial) {
    const auto n = rng.between(3, 7);
    const auto m = rng.between(3, 8);
    const auto ids = numbered_ids("t", m);
    std::vector<std::vector<TransactionId>> receipts(n, ids);
    for (auto& r : receipts) rng.shuffle(r);

    // A chain of growing truncations, then one completion of the last one.
    std::vector<std::size_t> len(n, 0);
    StreamState state;
    LiveOptions options;
    options.rounding = args.round;
    options.prune_ledger = false;
    TotalOrder prelim;
    std::vector<std::vector<TransactionId>> partial(n);
    for (int step = 0; step < 4; ++step) {
      for (std::size_t r = 0; r < n; ++r) {
        len[r] = rng.between(len[r], m);
        partial[r].assign(receipts[r].begin(), receipts[r].begin() + static_cast<std::ptrdiff_t>(len[r]));
      }
      const VoteSet votes(partial);
      const auto before = state.output;
      stream_step_live(state, votes, options);
      prelim = stream_step_preliminary(votes, {}, args.round, prelim).output;
      ++invocations;
      if (!std::equal(before.begin(), before.end(), state.output.begin())) ++mismatches;
    }

    auto complete = partial;
    for (auto& v : complete) {
      const std::unordered_set<TransactionId> have(v.begin(), v.end());
      std::vector<TransactionId> rest;
      for (const auto& id : ids) {
        if (!have.contains(id)) rest.push_back(id);
      }
      rng.shuffle(rest);
      v.insert(v.end(), rest.begin(), rest.end());
    }
    auto graph = build_ordering_graph(VoteSet(complete));
    if (args.round) graph = round_graph(graph, *args.round);
    const auto implied = ranked_pairs_in_order(graph, implied_edge_order(graph, state.ledger));
    const auto fixed = ranked_pairs(graph);
    const auto is_prefix = [](const TotalOrder& p, const TotalOrder& w) {
      return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
    };
    if (!is_prefix(state.output, implied)) {
      ++mismatches;
      std::cerr << "live output is not a prefix (instance " << trial << ")\n";
    }
    if (!is_prefix(prelim, fixed)) {
      ++mismatches;
      std::cerr << "preliminary output is not a prefix (instance " << trial << ")\n";
    }
  }
  std::cout << "instances " << args.count << "\ninvocations " << invocations << "\nmismatches " << mismatches << "\n";
  return mismatches == 0 ? kOk : kInternalFault;
}

int cmd_fixture(const FixtureArgs& args) {
  const auto& name = args.name;
  if (name == "interleaved-cycles") {
    std::cout << format_vote_log(interleaved_cycles_instance());
  } else if (name == "high-gamma") {
    std::cout << format_vote_log(high_gamma_instance());
  } else if (name == "low-gamma") {
    std::cout << format_vote_log(low_gamma_instance());
  } else if (name == "intermediate-gamma") {
    std::cout << format_vote_log(intermediate_gamma_instance());
  } else if (name == "alternating-swaps") {
    std::vector<VoteSet> blocks;
    for (std::size_t length = 4; length <= args.length; length += 2) blocks.push_back(generate_nonlive_instance(length).votes);
    if (blocks.empty()) throw InvalidArgumentError("--length must be at least 4");
    std::cout << format_vote_stream(blocks);
  } else if (name == "indistinguishable-worlds") {
    const auto inst = generate_impossibility_instance(7, Rational(2, 3));
    const auto& world = args.world == "second" ? inst.second : inst.first;
    if (args.world != "first" && args.world != "second") throw InvalidArgumentError("--world is first or second");
    std::cout << format_vote_log(VoteSet(world.received));
  } else {
    throw InvalidArgumentError("unknown fixture '" + name +
                               "' (interleaved-cycles, high-gamma, low-gamma, intermediate-gamma, alternating-swaps, "
                               "indistinguishable-worlds)");
  }
  return kOk;
}

}  // namespace fairorder::cli
