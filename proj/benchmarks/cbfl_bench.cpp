#include <benchmark/benchmark.h>

#include "cbfl/cycle.hpp"
#include "cbfl/dataset.hpp"
#include "cbfl/event_queue.hpp"
#include "cbfl/experiment.hpp"
#include "cbfl/fl_core.hpp"
#include "cbfl/latency_model.hpp"
#include "cbfl/sim_engine.hpp"

namespace {

void BM_EventQueue(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  cbfl::RandomStream r(1);
  std::vector<double> times(n);
  for (auto& t : times) t = r.uniform() * 100.0;
  for (auto _ : state) {
    cbfl::sim::EventQueue q;
    for (double t : times) q.schedule(t, cbfl::sim::EventKind::TxArrival);
    while (!q.empty()) benchmark::DoNotOptimize(q.pop());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_EventQueue)->Arg(100)->Arg(10000);

void BM_LeaderBatching(benchmark::State& state) {
  cbfl::SystemParams p;
  p.lambda = static_cast<double>(state.range(0));
  std::uint64_t rep = 0;
  for (auto _ : state) {
    auto s = cbfl::RandomStreams::derive(1, rep++);
    const auto arrivals = cbfl::sim::generate_arrival_count(p.lambda, 100, s.arrivals);
    benchmark::DoNotOptimize(cbfl::sim::run_leader_batching(p, arrivals, s));
  }
}
BENCHMARK(BM_LeaderBatching)->Arg(100)->Arg(250);

void BM_ConsensusRun(benchmark::State& state) {
  cbfl::SystemParams p;
  p.f = static_cast<int>(state.range(0));
  p.n_peers = 3 * p.f + 1;
  std::uint64_t rep = 0;
  for (auto _ : state) {
    auto s = cbfl::RandomStreams::derive(2, rep++);
    benchmark::DoNotOptimize(cbfl::sim::run_consensus(p, s));
  }
}
BENCHMARK(BM_ConsensusRun)->Arg(1)->Arg(10);

void BM_Experiment(benchmark::State& state) {
  cbfl::SystemParams p;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cbfl::sim::run_experiment(p, 1000, 3, {"bench", 500, 1}));
  }
}
BENCHMARK(BM_Experiment)->Unit(benchmark::kMillisecond);

void BM_SvrgCycle(benchmark::State& state) {
  cbfl::RandomStream r(4);
  const auto d = cbfl::generate_gaussian_classes({400, 3.0, 0.5}, 500, r);
  const cbfl::SystemParams p;
  cbfl::GlobalModel g{cbfl::Vector(400, 0.0), {}, 0};
  g.full_gradient = cbfl::average_gradient(g.weights, d);
  for (auto _ : state) {
    cbfl::RandomStream rng(5);
    benchmark::DoNotOptimize(cbfl::svrg_local_cycle(g, d, p, rng));
  }
}
BENCHMARK(BM_SvrgCycle)->Unit(benchmark::kMillisecond);

void BM_FullCycle(benchmark::State& state) {
  cbfl::RandomStream r(6);
  std::vector<cbfl::sim::Enterprise> ents(4);
  for (std::size_t i = 0; i < ents.size(); ++i) {
    ents[i].train = cbfl::generate_gaussian_classes({400, 3.0, 0.5}, 500, r, static_cast<std::uint32_t>(i));
    ents[i].test = cbfl::generate_gaussian_classes({400, 3.0, 0.5}, 200, r, static_cast<std::uint32_t>(i));
  }
  const cbfl::SystemParams p;
  const cbfl::GlobalModel g{cbfl::Vector(400, 0.0), {}, 0};
  std::uint64_t rep = 0;
  for (auto _ : state) {
    auto s = cbfl::RandomStreams::derive(7, rep++);
    benchmark::DoNotOptimize(cbfl::sim::run_cycle(p, ents, g, s));
  }
}
BENCHMARK(BM_FullCycle)->Unit(benchmark::kMillisecond);

void BM_AnalyticModel(benchmark::State& state) {
  const cbfl::SystemParams p;
  double lambda = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cbfl::model::t_consensus_closed_form(100, 1, lambda, 300));
    benchmark::DoNotOptimize(cbfl::model::t_total(p, 500, 100));
    lambda = lambda < 299.0 ? lambda + 1.0 : 1.0;
  }
}
BENCHMARK(BM_AnalyticModel);

void BM_GridArgmin(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(cbfl::model::argmin_consensus_grid(1, 100, 300, 0.3));
  }
}
BENCHMARK(BM_GridArgmin);

}  // namespace

BENCHMARK_MAIN();
