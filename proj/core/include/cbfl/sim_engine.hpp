#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cbfl/domain.hpp"
#include "cbfl/event_queue.hpp"
#include "cbfl/random.hpp"

// Discrete-event simulation of the consensus part of one CBFL cycle: Poisson
// tx arrivals, FIFO exponential service at the leader, block sealing, and a
// three-phase PBFT round seen from one honest observer.
//
// Peer 0 is the fixed leader. The observer is peer 1 (peer 0 when N_P == 1).
// Faulty peers are crash-silent and are never the leader or the observer.
namespace cbfl::sim {

// Poisson process on [0, horizon): strictly increasing times.
std::vector<double> generate_arrivals(double lambda, double horizon, RandomStream& stream);

// The first `count` points of a Poisson process started at `start`.
std::vector<double> generate_arrival_count(double lambda, std::size_t count,
                                           RandomStream& stream, double start = 0.0);

enum class SealReason : std::uint8_t {
  BlockFull,  // N_B txs served
  Timeout,    // tau elapsed since the first arrival (b >= 1 enforced)
  Drained,    // every supplied arrival has been served
};

struct BatchResult {
  double first_arrival = 0.0;
  double sealed_at = 0.0;
  SealReason reason = SealReason::BlockFull;
  std::size_t backlog = 0;  // jobs already queued when the cycle started
  // Arrival and departure times of the txs in the block, FIFO order.
  std::vector<double> arrivals;
  std::vector<double> departures;

  std::size_t b() const noexcept { return arrivals.size(); }
  std::vector<double> sojourns() const;
  // Pre-prepare delay: summed leader-queue sojourn of the block's txs.
  double total_sojourn() const;
};

// Leader batching as an M/M/1 queue. The queue starts in its stationary state
// (geometric backlog ahead of the cycle's first tx), so per-tx sojourns have
// mean 1/(mu - lambda) from the first tx on. Throws Error for an empty
// arrival list.
BatchResult run_leader_batching(const SystemParams& p, std::span<const double> arrivals,
                                RandomStreams& streams, EventQueue& queue);
BatchResult run_leader_batching(const SystemParams& p, std::span<const double> arrivals,
                                RandomStreams& streams);

struct PbftOptions {
  // Number of crash-silent peers; defaults to p.f. Values above f make the
  // quorum unreachable.
  std::optional<int> faulty;
};

struct PbftResult {
  double t_preprepare = 0.0;
  double t_prepare = 0.0;
  double t_commit = 0.0;
  double committed_at = 0.0;
  // Tallies at the observer when each quorum formed, self included.
  int prepare_votes = 0;
  int commit_votes = 0;
  std::uint32_t leader = 0;
  std::uint32_t observer = 0;
  std::vector<std::uint32_t> faulty_peers;
};

// One PBFT round for a sealed batch. At the observer, each of prepare and
// commit waits for 2f messages from other peers (exponential(lambda) gaps),
// then processes 2f+1 messages at exponential(mu) each. Throws
// QuorumUnreachable when fewer than 2f other honest peers exist.
PbftResult run_pbft_round(const SystemParams& p, const BatchResult& batch,
                          RandomStreams& streams, EventQueue& queue,
                          const PbftOptions& options = {});
PbftResult run_pbft_round(const SystemParams& p, const BatchResult& batch,
                          RandomStreams& streams, const PbftOptions& options = {});

struct ConsensusRun {
  BatchResult batch;
  PbftResult pbft;
};

// Arrivals -> batching -> PBFT for one block of up to N_B txs.
ConsensusRun run_consensus(const SystemParams& p, RandomStreams& streams,
                           std::vector<Event>* trace = nullptr);

}  // namespace cbfl::sim
