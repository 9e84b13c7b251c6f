#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cbfl/domain.hpp"

namespace cbfl::sim {

struct ExperimentOptions {
  std::string config_id = "default";
  double n_i = 500.0;    // samples at the observed enterprise, for t_local
  unsigned threads = 0;  // 0: hardware concurrency
};

// Per-replication record, kept for audits and tests.
struct ReplicationSample {
  LatencyBreakdown latency;
  std::size_t b = 0;
};

// Runs `replications` independent consensus pipelines (arrivals, batching,
// PBFT). Replication r draws from RandomStreams::derive(master_seed, r), and
// results are reduced in replication order, so the output does not depend on
// the thread count. The analytic column is model::t_total at the mean
// realized b. Throws Error for zero replications.
ExperimentStats run_experiment(const SystemParams& p, std::size_t replications,
                               std::uint64_t master_seed,
                               const ExperimentOptions& options = {},
                               std::vector<ReplicationSample>* samples = nullptr);

}  // namespace cbfl::sim
