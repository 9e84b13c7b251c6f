#include "cbfl/sim_engine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace cbfl::sim {

std::vector<double> generate_arrivals(double lambda, double horizon, RandomStream& stream) {
  if (!(lambda > 0.0)) throw DomainError("arrival rate must be > 0");
  if (!(horizon >= 0.0)) throw DomainError("horizon must be >= 0");
  std::vector<double> times;
  double t = sample_exponential(lambda, stream);
  while (t < horizon) {
    times.push_back(t);
    t += sample_exponential(lambda, stream);
  }
  return times;
}

std::vector<double> generate_arrival_count(double lambda, std::size_t count,
                                           RandomStream& stream, double start) {
  if (!(lambda > 0.0)) throw DomainError("arrival rate must be > 0");
  std::vector<double> times;
  times.reserve(count);
  double t = start;
  for (std::size_t i = 0; i < count; ++i) {
    t += sample_exponential(lambda, stream);
    times.push_back(t);
  }
  return times;
}

std::vector<double> BatchResult::sojourns() const {
  std::vector<double> out(arrivals.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = departures[i] - arrivals[i];
  return out;
}

double BatchResult::total_sojourn() const {
  double total = 0.0;
  for (std::size_t i = 0; i < arrivals.size(); ++i) total += departures[i] - arrivals[i];
  return total;
}

namespace {

constexpr std::uint64_t kBacklogRef = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint64_t kTimeoutRef = 0;
constexpr std::uint64_t kSealRef = 1;

}  // namespace

BatchResult run_leader_batching(const SystemParams& p, std::span<const double> arrivals,
                                RandomStreams& streams, EventQueue& queue) {
  if (arrivals.empty()) throw Error("no tx arrivals to batch");
  const double rho = p.lambda / p.mu;
  const auto capacity = static_cast<std::size_t>(p.n_block);
  constexpr std::uint32_t kLeader = 0;

  BatchResult out;
  out.first_arrival = arrivals.front();

  // The first tx finds the stationary M/M/1 backlog seen by Poisson arrivals:
  // P(backlog = n) = (1 - rho) rho^n, each job with a fresh exponential
  // service (memoryless residual for the one in service). Anchoring it at the
  // first arrival rather than at time 0 avoids the length-biased first gap.
  bool busy = false;
  while (streams.services.uniform() < rho) ++out.backlog;
  if (out.backlog > 0) {
    double work = 0.0;
    for (std::size_t i = 0; i < out.backlog; ++i) work += sample_exponential(p.mu, streams.services);
    queue.schedule(arrivals[0] + work, EventKind::ServiceComplete, kLeader, kBacklogRef);
    busy = true;
  }

  std::deque<std::size_t> waiting;
  std::size_t next_arrival = 0;
  std::size_t served = 0;
  bool timeout_expired = false;
  bool sealing = false;

  queue.schedule(arrivals[0], EventKind::TxArrival, kLeader, 0);
  auto start_service = [&] {
    if (busy || waiting.empty()) return;
    busy = true;
    queue.schedule(queue.now() + sample_exponential(p.mu, streams.services),
                   EventKind::ServiceComplete, kLeader, waiting.front());
  };
  auto seal = [&](SealReason reason) {
    sealing = true;
    out.reason = reason;
    queue.schedule(queue.now(), EventKind::BlockSealed, kLeader, kSealRef);
  };

  while (!queue.empty()) {
    const Event e = queue.pop();
    switch (e.kind) {
      case EventKind::TxArrival: {
        if (sealing) break;
        waiting.push_back(e.ref);
        if (e.ref == 0 && std::isfinite(p.tau)) {
          queue.schedule(e.time + p.tau, EventKind::BlockSealed, kLeader, kTimeoutRef);
        }
        next_arrival = e.ref + 1;
        if (next_arrival < arrivals.size()) {
          if (arrivals[next_arrival] < e.time) throw Error("arrival times must be nondecreasing");
          queue.schedule(arrivals[next_arrival], EventKind::TxArrival, kLeader, next_arrival);
        }
        start_service();
        break;
      }
      case EventKind::ServiceComplete: {
        busy = false;
        if (sealing) break;
        if (e.ref != kBacklogRef) {
          waiting.pop_front();
          out.arrivals.push_back(arrivals[e.ref]);
          out.departures.push_back(e.time);
          ++served;
          if (served == capacity) {
            seal(SealReason::BlockFull);
            break;
          }
          if (timeout_expired) {
            seal(SealReason::Timeout);
            break;
          }
          if (served == arrivals.size()) {
            seal(SealReason::Drained);
            break;
          }
        }
        start_service();
        break;
      }
      case EventKind::BlockSealed: {
        if (e.ref == kSealRef) {
          out.sealed_at = e.time;
          queue.discard_pending();
          return out;
        }
        if (sealing) break;
        // tau elapsed: seal now if anything is served, else at the first completion.
        if (served >= 1) {
          seal(SealReason::Timeout);
        } else {
          timeout_expired = true;
        }
        break;
      }
      default:
        throw std::logic_error("unexpected event in leader batching");
    }
  }
  throw std::logic_error("leader batching ended without sealing a block");
}

BatchResult run_leader_batching(const SystemParams& p, std::span<const double> arrivals,
                                RandomStreams& streams) {
  EventQueue queue;
  return run_leader_batching(p, arrivals, streams, queue);
}

namespace {

std::vector<std::uint32_t> pick_faulty(int n_peers, std::uint32_t leader,
                                       std::uint32_t observer, int count,
                                       RandomStream& stream) {
  std::vector<std::uint32_t> candidates;
  for (int i = 0; i < n_peers; ++i) {
    const auto id = static_cast<std::uint32_t>(i);
    if (id != leader && id != observer) candidates.push_back(id);
  }
  if (static_cast<std::size_t>(count) > candidates.size()) {
    throw QuorumUnreachable("cannot place " + std::to_string(count) +
                            " faulty peers outside leader and observer");
  }
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < static_cast<std::size_t>(count); ++i) {
    const std::size_t j = i + stream.index(candidates.size() - i);
    std::swap(candidates[i], candidates[j]);
  }
  candidates.resize(static_cast<std::size_t>(count));
  std::sort(candidates.begin(), candidates.end());
  return candidates;
}

}  // namespace

PbftResult run_pbft_round(const SystemParams& p, const BatchResult& batch,
                          RandomStreams& streams, EventQueue& queue,
                          const PbftOptions& options) {
  const int n_faulty = options.faulty.value_or(p.f);
  if (n_faulty < 0) throw DomainError("faulty peer count must be >= 0");

  PbftResult out;
  out.leader = 0;
  out.observer = p.n_peers > 1 ? 1 : 0;
  out.t_preprepare = batch.total_sojourn();
  out.faulty_peers = pick_faulty(p.n_peers, out.leader, out.observer, n_faulty, streams.faults);

  std::vector<std::uint32_t> honest_others;
  for (int i = 0; i < p.n_peers; ++i) {
    const auto id = static_cast<std::uint32_t>(i);
    if (id == out.observer) continue;
    if (std::binary_search(out.faulty_peers.begin(), out.faulty_peers.end(), id)) continue;
    honest_others.push_back(id);
  }

  const int quorum = 2 * p.f + 1;
  enum class Phase { Idle, Prepare, Commit, Done } phase = Phase::Idle;
  double phase_start = 0.0;
  int votes = 0;
  int processed = 0;
  bool processing = false;

  // Other peers' messages reach the observer as a Poisson stream of rate lambda.
  auto broadcast = [&](EventKind kind) {
    double t = queue.now();
    for (std::uint32_t peer : honest_others) {
      t += sample_exponential(p.lambda, streams.arrivals);
      queue.schedule(t, kind, peer, 0);
    }
  };
  auto process_next = [&] {
    queue.schedule(queue.now() + sample_exponential(p.mu, streams.services),
                   EventKind::ServiceComplete, out.observer, static_cast<std::uint64_t>(processed));
  };
  auto enter = [&](Phase next) {
    phase = next;
    phase_start = queue.now();
    votes = 1;  // own message
    processed = 0;
    processing = false;
    broadcast(next == Phase::Prepare ? EventKind::PrepareRecv : EventKind::CommitRecv);
  };
  auto on_vote = [&] {
    if (processing || votes < quorum) return;
    processing = true;
    if (phase == Phase::Prepare) {
      out.prepare_votes = votes;
    } else {
      out.commit_votes = votes;
    }
    process_next();
  };

  if (queue.now() > batch.sealed_at) throw std::logic_error("PBFT round starts in the past");
  queue.schedule(batch.sealed_at, EventKind::PrePrepareRecv, out.observer, batch.b());

  while (!queue.empty()) {
    const Event e = queue.pop();
    switch (e.kind) {
      case EventKind::PrePrepareRecv:
        enter(Phase::Prepare);
        on_vote();
        break;
      case EventKind::PrepareRecv:
        if (phase != Phase::Prepare) break;  // late duplicate after quorum
        votes = std::min(votes + 1, p.n_peers);
        on_vote();
        break;
      case EventKind::CommitRecv:
        if (phase != Phase::Commit) break;
        votes = std::min(votes + 1, p.n_peers);
        on_vote();
        break;
      case EventKind::ServiceComplete:
        ++processed;
        if (processed < quorum) {
          process_next();
          break;
        }
        if (phase == Phase::Prepare) {
          out.t_prepare = e.time - phase_start;
          queue.discard_pending();
          enter(Phase::Commit);
          on_vote();
        } else {
          out.t_commit = e.time - phase_start;
          phase = Phase::Done;
          queue.discard_pending();
          queue.schedule(e.time, EventKind::ReplySent, out.observer, 0);
        }
        break;
      case EventKind::ReplySent:
        if (out.commit_votes < quorum) throw std::logic_error("commit without quorum");
        out.committed_at = e.time;
        return out;
      default:
        throw std::logic_error("unexpected event in PBFT round");
    }
  }
  throw QuorumUnreachable("quorum of " + std::to_string(quorum) +
                          " unreachable: only " + std::to_string(honest_others.size() + 1) +
                          " honest participants");
}

PbftResult run_pbft_round(const SystemParams& p, const BatchResult& batch,
                          RandomStreams& streams, const PbftOptions& options) {
  EventQueue queue(0.0);
  return run_pbft_round(p, batch, streams, queue, options);
}

ConsensusRun run_consensus(const SystemParams& p, RandomStreams& streams,
                           std::vector<Event>* trace) {
  EventQueue queue(0.0, trace);
  const auto arrivals =
      generate_arrival_count(p.lambda, static_cast<std::size_t>(p.n_block), streams.arrivals);
  ConsensusRun run;
  run.batch = run_leader_batching(p, arrivals, streams, queue);
  run.pbft = run_pbft_round(p, run.batch, streams, queue);
  return run;
}

}  // namespace cbfl::sim
