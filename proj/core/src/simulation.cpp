#include "fairorder/simulation.hpp"

#include "fairorder/errors.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace fairorder {

std::vector<ScheduledTx> generate_schedule(std::size_t count, std::uint64_t max_gap, std::uint64_t seed,
                                           const std::string& prefix) {
  std::mt19937_64 rng(seed ^ 0xD1B54A32D192ED03ULL);
  std::vector<ScheduledTx> out;
  std::uint64_t t = 0;
  for (std::size_t i = 1; i <= count; ++i) {
    if (i > 1) t += rng() % (max_gap + 1);
    out.push_back({t, TransactionId(prefix + std::to_string(i))});
  }
  return out;
}

void validate(const ScenarioConfig& config) {
  if (config.replicas == 0) throw InvalidArgumentError("replicas must be at least 1");
  if (config.delta < 1) throw InvalidArgumentError("delta must be at least 1");
  if (config.round_len < 1) throw InvalidArgumentError("round_len must be at least 1");
  if (config.completion_rounds * config.round_len < config.delta) {
    throw InvalidArgumentError("completion_rounds * round_len must be at least delta");
  }
  if (config.rounding_denominator && *config.rounding_denominator == 0) {
    throw InvalidArgumentError("rounding_denominator must be at least 1");
  }
  if (!config.faults.empty() && config.faults.size() != config.replicas) {
    throw InvalidArgumentError("faults must list one strategy per replica");
  }
  std::unordered_set<TransactionId> ids;
  for (const auto& tx : config.schedule) {
    if (tx.id.empty()) throw InvalidArgumentError("schedule contains an empty transaction id");
    if (!ids.insert(tx.id).second) throw InvalidArgumentError("transaction '" + tx.id.str() + "' scheduled twice");
    if (tx.send_time > config.horizon) {
      throw InvalidArgumentError("transaction '" + tx.id.str() + "' is sent after the horizon");
    }
  }
  for (const auto& f : config.faults) {
    if (f.kind == FaultStrategy::Kind::WindowShuffle && f.window == 0) {
      throw InvalidArgumentError("window_shuffle needs a window of at least 1");
    }
  }
}

std::vector<std::size_t> faulty_replicas(const ScenarioConfig& config) {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < config.faults.size(); ++r) {
    if (!config.faults[r].honest()) out.push_back(r);
  }
  return out;
}

TotalOrder SimTrace::output_order() const {
  TotalOrder out;
  for (const auto& e : output) out.push_back(e.id);
  return out;
}

ReceiptProfile SimTrace::profile() const {
  ReceiptProfile p;
  for (const auto& per_replica : receipts) {
    std::vector<TransactionId> ids;
    for (const auto& r : per_replica) ids.push_back(r.id);
    p.received.push_back(std::move(ids));
  }
  p.faulty = faulty_replicas(config);
  p.reported = rounds.empty() ? VoteSet(std::vector<std::vector<TransactionId>>(config.replicas)) : rounds.back().votes;
  return p;
}

std::vector<Fabrication> fabricate_missing_votes(std::uint64_t round, std::uint64_t completion_rounds,
                                                 const std::vector<std::pair<TransactionId, std::uint64_t>>& first_reported,
                                                 std::vector<std::vector<TransactionId>>& votes) {
  std::vector<TransactionId> due;
  for (const auto& [id, first] : first_reported) {
    if (first + completion_rounds <= round) due.push_back(id);
  }
  std::sort(due.begin(), due.end(), [](const TransactionId& a, const TransactionId& b) {
    const auto da = a.digest();
    const auto db = b.digest();
    return da != db ? da < db : a < b;
  });
  std::vector<Fabrication> out;
  for (std::size_t r = 0; r < votes.size(); ++r) {
    const std::unordered_set<TransactionId> have(votes[r].begin(), votes[r].end());
    for (const auto& id : due) {
      if (have.contains(id)) continue;
      votes[r].push_back(id);
      out.push_back({round, 0, r, id});
    }
  }
  return out;
}

namespace {

class Reporter {
 public:
  Reporter(FaultStrategy strategy, std::uint64_t seed) : strategy_(std::move(strategy)), rng_(seed) {}

  // Appends the replica's report of `arrived` to `vote`.
  void report(const std::vector<TransactionId>& arrived, std::vector<TransactionId>& vote) {
    std::unordered_set<TransactionId> have(vote.begin(), vote.end());
    const auto push = [&](const TransactionId& id) {
      if (have.insert(id).second) vote.push_back(id);
    };
    switch (strategy_.kind) {
      case FaultStrategy::Kind::Honest:
        for (const auto& id : arrived) push(id);
        break;
      case FaultStrategy::Kind::Withholder:
        for (const auto& id : arrived) {
          if (std::find(strategy_.victims.begin(), strategy_.victims.end(), id) == strategy_.victims.end()) push(id);
        }
        break;
      case FaultStrategy::Kind::WindowShuffle:
        for (std::size_t start = 0; start < arrived.size(); start += strategy_.window) {
          const auto end = std::min(arrived.size(), start + strategy_.window);
          std::vector<TransactionId> chunk(arrived.begin() + static_cast<std::ptrdiff_t>(start),
                                           arrived.begin() + static_cast<std::ptrdiff_t>(end));
          // Fisher-Yates with raw engine output; std::shuffle is not
          // specified identically across standard libraries.
          for (std::size_t i = chunk.size(); i > 1; --i) std::swap(chunk[i - 1], chunk[rng_() % i]);
          for (const auto& id : chunk) push(id);
        }
        break;
      case FaultStrategy::Kind::TargetedSwap:
        for (const auto& id : arrived) {
          const auto pair = std::find_if(strategy_.pairs.begin(), strategy_.pairs.end(),
                                         [&](const auto& p) { return p.first == id; });
          if (pair != strategy_.pairs.end() && !seen_.contains(pair->second)) {
            held_.emplace_back(pair->second, id);
            continue;
          }
          seen_.insert(id);
          push(id);
          for (auto it = held_.begin(); it != held_.end();) {
            if (it->first == id) {
              push(it->second);
              seen_.insert(it->second);
              it = held_.erase(it);
            } else {
              ++it;
            }
          }
        }
        break;
    }
  }

 private:
  FaultStrategy strategy_;
  std::mt19937_64 rng_;
  std::unordered_set<TransactionId> seen_;
  // (awaited, held)
  std::vector<std::pair<TransactionId, TransactionId>> held_;
};

}  // namespace

SimTrace run_simulation(const ScenarioConfig& config) {
  validate(config);
  SimTrace trace;
  trace.config = config;
  const auto n = config.replicas;

  auto schedule = config.schedule;
  std::sort(schedule.begin(), schedule.end(), [](const ScheduledTx& a, const ScheduledTx& b) {
    return a.send_time != b.send_time ? a.send_time < b.send_time : a.id < b.id;
  });
  std::unordered_map<TransactionId, std::uint64_t> send_time;
  for (const auto& tx : schedule) send_time.emplace(tx.id, tx.send_time);

  std::mt19937_64 rng(config.seed);
  trace.receipts.resize(n);
  for (const auto& tx : schedule) {
    for (std::size_t r = 0; r < n; ++r) trace.receipts[r].push_back({tx.send_time + rng() % config.delta, tx.id});
  }
  for (auto& per_replica : trace.receipts) {
    std::stable_sort(per_replica.begin(), per_replica.end(), [&](const Receipt& a, const Receipt& b) {
      if (a.tick != b.tick) return a.tick < b.tick;
      const auto sa = send_time.at(a.id);
      const auto sb = send_time.at(b.id);
      return sa != sb ? sa < sb : a.id < b.id;
    });
  }

  std::vector<Reporter> reporters;
  for (std::size_t r = 0; r < n; ++r) {
    FaultStrategy s = config.faults.empty() ? FaultStrategy{} : config.faults[r];
    reporters.emplace_back(std::move(s), config.seed ^ (0x9E3779B97F4A7C15ULL * (r + 1)));
  }

  std::vector<std::vector<TransactionId>> votes(n);
  std::vector<std::size_t> cursor(n, 0);
  std::vector<std::pair<TransactionId, std::uint64_t>> first_reported;
  std::unordered_set<TransactionId> reported_any;
  StreamState state;
  LiveOptions options;
  options.rounding = config.rounding_denominator;

  for (std::uint64_t round = 1; round * config.round_len <= config.horizon; ++round) {
    const auto tick = round * config.round_len;
    for (std::size_t r = 0; r < n; ++r) {
      std::vector<TransactionId> arrived;
      auto& c = cursor[r];
      while (c < trace.receipts[r].size() && trace.receipts[r][c].tick <= tick) arrived.push_back(trace.receipts[r][c++].id);
      reporters[r].report(arrived, votes[r]);
    }
    for (const auto& vote : votes) {
      for (const auto& id : vote) {
        if (reported_any.insert(id).second) first_reported.emplace_back(id, round);
      }
    }
    for (auto& f : fabricate_missing_votes(round, config.completion_rounds, first_reported, votes)) {
      f.tick = tick;
      trace.fabrications.push_back(std::move(f));
    }

    VoteSet vs(votes);
    auto step = stream_step_live(state, vs, options);
    for (const auto& id : step.emitted) trace.output.push_back({tick, id});
    trace.rounds.push_back({round, tick, std::move(vs), std::move(step.emitted)});
  }
  return trace;
}

std::uint64_t LivenessReport::max_delay() const {
  std::uint64_t m = 0;
  for (const auto& r : records) {
    if (r.emit_time) m = std::max(m, *r.emit_time - r.send_time);
  }
  return m;
}

std::uint64_t liveness_bound(const ScenarioConfig& config) {
  const std::uint64_t factor = config.rounding_denominator ? *config.rounding_denominator + 2 : config.replicas + 1;
  return factor * config.delta + 2 * config.round_len;
}

LivenessReport measure_liveness(const SimTrace& trace) {
  LivenessReport report;
  report.bound = liveness_bound(trace.config);
  std::unordered_map<TransactionId, std::uint64_t> emitted;
  for (const auto& e : trace.output) emitted.emplace(e.id, e.tick);
  auto schedule = trace.config.schedule;
  std::sort(schedule.begin(), schedule.end(), [](const ScheduledTx& a, const ScheduledTx& b) {
    return a.send_time != b.send_time ? a.send_time < b.send_time : a.id < b.id;
  });
  for (const auto& tx : schedule) {
    DelayRecord rec{tx.id, tx.send_time, std::nullopt, false};
    if (auto it = emitted.find(tx.id); it != emitted.end()) {
      rec.emit_time = it->second;
      rec.within_bound = it->second - tx.send_time <= report.bound;
      if (!rec.within_bound) ++report.late;
    } else {
      ++report.never_emitted;
    }
    report.records.push_back(std::move(rec));
  }
  return report;
}

}  // namespace fairorder
