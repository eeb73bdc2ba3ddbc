#include "fairorder/fairness.hpp"
#include "fairorder/fixtures.hpp"
#include "fairorder/ranked_pairs.hpp"
#include "fairorder/simulation.hpp"
#include "fairorder/streaming.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace fairorder;

namespace {

// Common order with a few adjacent swaps per replica.
VoteSet noisy_votes(std::size_t replicas, std::size_t transactions, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto ids = numbered_ids("t", transactions);
  std::vector<std::vector<TransactionId>> out;
  for (std::size_t r = 0; r < replicas; ++r) {
    auto order = ids;
    for (std::size_t s = 0; s < transactions / 4; ++s) {
      const auto i = rng() % (transactions - 1);
      std::swap(order[i], order[i + 1]);
    }
    out.push_back(std::move(order));
  }
  return VoteSet(std::move(out));
}

void BM_RankedPairs(benchmark::State& state) {
  const auto votes = noisy_votes(7, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(ranked_pairs(votes));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RankedPairs)->RangeMultiplier(2)->Range(8, 256)->Complexity();

void BM_StreamStepLive(benchmark::State& state) {
  const auto full = noisy_votes(7, static_cast<std::size_t>(state.range(0)), 2);
  std::vector<std::vector<TransactionId>> partial;
  for (std::size_t r = 0; r < full.replica_count(); ++r) {
    const auto& v = full.votes()[r];
    partial.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(v.size() - r));
  }
  const VoteSet votes(std::move(partial));
  for (auto _ : state) {
    StreamState s;
    benchmark::DoNotOptimize(stream_step_live(s, votes));
  }
}
BENCHMARK(BM_StreamStepLive)->RangeMultiplier(2)->Range(8, 128);

void BM_StreamPreliminaryAlternating(benchmark::State& state) {
  const auto inst = generate_nonlive_instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(stream_step_preliminary(inst.votes, inst.tiebreak));
}
BENCHMARK(BM_StreamPreliminaryAlternating)->DenseRange(10, 40, 10);

void BM_AuditAllGamma(benchmark::State& state) {
  const auto votes = noisy_votes(7, static_cast<std::size_t>(state.range(0)), 3);
  const auto profile = honest_profile(votes);
  const auto order = ranked_pairs(votes);
  for (auto _ : state) benchmark::DoNotOptimize(audit_all_gamma(profile, order, Rational(0)));
}
BENCHMARK(BM_AuditAllGamma)->RangeMultiplier(2)->Range(8, 128);

void BM_Simulation(benchmark::State& state) {
  ScenarioConfig c;
  c.replicas = 7;
  c.delta = 12;
  c.round_len = 4;
  c.completion_rounds = 3;
  c.seed = 5;
  c.schedule = generate_schedule(static_cast<std::size_t>(state.range(0)), 6, 9);
  c.horizon = c.schedule.back().send_time + liveness_bound(c) + c.round_len;
  for (auto _ : state) benchmark::DoNotOptimize(run_simulation(c));
}
BENCHMARK(BM_Simulation)->Arg(20)->Arg(60);

}  // namespace

BENCHMARK_MAIN();
