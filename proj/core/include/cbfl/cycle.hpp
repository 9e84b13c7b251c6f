#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cbfl/domain.hpp"
#include "cbfl/fl_core.hpp"
#include "cbfl/sim_engine.hpp"

namespace cbfl::sim {

struct Enterprise {
  Dataset train;
  Dataset test;  // T instances this enterprise's peer verifies with
  // Submits seed-random weights instead of training.
  bool adversarial = false;
};

// Cross-verification outcome for one submitted tx.
struct TxVerdict {
  std::uint32_t enterprise_id = 0;
  bool digest_ok = false;
  double min_accuracy = 0.0;  // worst accuracy over the verifying peers
  bool accepted = false;
};

struct CycleResult {
  GlobalModel model;
  LatencyBreakdown latency;
  Block block;
  std::vector<TxVerdict> verdicts;
  sim::BatchResult batch;
  sim::PbftResult pbft;
};

// One CBFL cycle:
//  1. every enterprise runs svrg_local_cycle from g (adversaries submit random
//     weights); cycle 0 bootstraps the SVRG anchor from local data
//  2. upload
//  3. cross-verification: a tx is admitted iff every other enterprise's peer
//     accepts it on its own test set (the submitter's own set if N_E == 1)
//  4. admitted txs arrive at the leader, get batched, and go through PBFT
//  5. download of the realized block
//  6. aggregate_global over the block's txs
// Update and communication delays are the deterministic formulas (t_local for
// enterprise 0); consensus delays are simulated. Throws Error when every tx
// is rejected.
CycleResult run_cycle(const SystemParams& p, std::span<const Enterprise> enterprises,
                      const GlobalModel& g, RandomStreams& streams,
                      std::vector<Event>* trace = nullptr);

}  // namespace cbfl::sim
