#include "cbfl/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "cbfl/latency_model.hpp"
#include "cbfl/random.hpp"
#include "cbfl/sim_engine.hpp"

namespace cbfl::sim {

namespace {

ReplicationSample run_one(const SystemParams& p, std::uint64_t seed, std::size_t r,
                          double n_i) {
  RandomStreams streams = RandomStreams::derive(seed, r);
  const ConsensusRun run = run_consensus(p, streams);
  ReplicationSample s;
  s.b = run.batch.b();
  const double b = static_cast<double>(s.b);
  s.latency.t_local = model::t_local_update(p.delta_d, n_i, p.f_c);
  s.latency.t_up = model::t_upload(p.delta_m, p.w_up, p.gamma_up);
  s.latency.t_preprepare = run.pbft.t_preprepare;
  s.latency.t_prepare = run.pbft.t_prepare;
  s.latency.t_commit = run.pbft.t_commit;
  s.latency.t_dn = model::t_download(p.h, b, p.delta_m, p.w_dn, p.gamma_dn);
  s.latency.t_global = model::t_global_update(p.delta_m, p.n_block, p.f_c);
  return s;
}

}  // namespace

ExperimentStats run_experiment(const SystemParams& p, std::size_t replications,
                               std::uint64_t master_seed, const ExperimentOptions& options,
                               std::vector<ReplicationSample>* samples) {
  if (replications == 0) throw Error("replications must be >= 1");
  validate_params(p);

  std::vector<ReplicationSample> results(replications);
  unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(std::min<std::size_t>(replications, 64)));

  if (threads == 1) {
    for (std::size_t r = 0; r < replications; ++r) {
      results[r] = run_one(p, master_seed, r, options.n_i);
    }
  } else {
    std::vector<std::exception_ptr> errors(threads);
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          try {
            for (std::size_t r = t; r < replications; r += threads) {
              results[r] = run_one(p, master_seed, r, options.n_i);
            }
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  ExperimentStats stats;
  stats.config_id = options.config_id;
  stats.replications = replications;
  double b_sum = 0.0;
  for (const auto& s : results) b_sum += static_cast<double>(s.b);
  stats.mean_b = b_sum / static_cast<double>(replications);

  const model::AnalyticBreakdown analytic = model::t_total(p, options.n_i, stats.mean_b);
  const double n = static_cast<double>(replications);
  for (std::string_view name : latency_component_names()) {
    ComponentStats c;
    c.name = std::string(name);
    // Shifted by the first sample so constant components come out exact.
    const double shift = latency_component(results.front().latency, name);
    double sum = 0.0;
    for (const auto& s : results) sum += latency_component(s.latency, name) - shift;
    const double centered_mean = sum / n;
    c.mean = shift + centered_mean;
    if (replications > 1) {
      double ss = 0.0;
      for (const auto& s : results) {
        const double d = latency_component(s.latency, name) - shift - centered_mean;
        ss += d * d;
      }
      c.std_err = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    c.analytic = latency_component(analytic, name);
    if (c.analytic > 0.0) c.rel_error = std::abs(c.mean - c.analytic) / c.analytic;
    stats.components.push_back(std::move(c));
  }
  if (samples != nullptr) *samples = std::move(results);
  return stats;
}

}  // namespace cbfl::sim
