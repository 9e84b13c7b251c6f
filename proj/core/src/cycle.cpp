#include "cbfl/cycle.hpp"

#include <algorithm>

#include "cbfl/latency_model.hpp"

namespace cbfl::sim {

namespace {

LocalUpdateTx random_update(const Enterprise& e, std::size_t dim, RandomStream& rng) {
  Vector w(dim);
  for (double& v : w) v = rng.normal();
  Vector grad = average_gradient(w, e.train);
  return make_tx(e.train.owner, std::move(w), std::move(grad), e.train.size(), 0.0);
}

TxVerdict cross_verify(const LocalUpdateTx& tx, std::size_t origin,
                       std::span<const Enterprise> enterprises, double e0) {
  TxVerdict v;
  v.enterprise_id = tx.enterprise_id;
  v.digest_ok = true;
  v.accepted = true;
  v.min_accuracy = 1.0;
  for (std::size_t j = 0; j < enterprises.size(); ++j) {
    if (j == origin && enterprises.size() > 1) continue;
    const Verdict peer = verify_update(tx, enterprises[j].test, e0);
    v.digest_ok = v.digest_ok && peer.digest_ok;
    v.min_accuracy = std::min(v.min_accuracy, peer.accuracy);
    v.accepted = v.accepted && peer.accepted;
  }
  return v;
}

}  // namespace

CycleResult run_cycle(const SystemParams& p, std::span<const Enterprise> enterprises,
                      const GlobalModel& g, RandomStreams& streams,
                      std::vector<Event>* trace) {
  if (enterprises.empty()) throw Error("run_cycle needs at least one enterprise");
  const std::size_t dim = g.weights.size();

  // Local updates.
  std::vector<LocalUpdateTx> submitted;
  submitted.reserve(enterprises.size());
  for (const auto& e : enterprises) {
    check_dataset(e.train);
    if (e.train.dim() != dim) throw DimensionError("enterprise data dimension mismatch");
    if (e.adversarial) {
      submitted.push_back(random_update(e, dim, streams.data));
      continue;
    }
    if (g.full_gradient.empty()) {
      GlobalModel local{g.weights, average_gradient(g.weights, e.train), g.cycle};
      submitted.push_back(svrg_local_cycle(local, e.train, p, streams.data));
    } else {
      submitted.push_back(svrg_local_cycle(g, e.train, p, streams.data));
    }
  }

  // Cross-verification.
  std::vector<TxVerdict> verdicts;
  std::vector<LocalUpdateTx> admitted;
  for (std::size_t i = 0; i < submitted.size(); ++i) {
    verdicts.push_back(cross_verify(submitted[i], i, enterprises, p.e0));
    if (verdicts.back().accepted) admitted.push_back(submitted[i]);
  }
  if (admitted.empty()) throw Error("all txs rejected by verification; empty block");

  // Admitted txs reach the leader in random order as a Poisson stream.
  for (std::size_t i = admitted.size(); i > 1; --i) {
    std::swap(admitted[i - 1], admitted[streams.arrivals.index(i)]);
  }
  EventQueue queue(0.0, trace);
  const auto arrival_times = generate_arrival_count(p.lambda, admitted.size(), streams.arrivals);
  for (std::size_t i = 0; i < admitted.size(); ++i) {
    admitted[i] = restamp(std::move(admitted[i]), arrival_times[i]);
  }
  auto batch = run_leader_batching(p, arrival_times, streams, queue);
  auto pbft = run_pbft_round(p, batch, streams, queue);
  admitted.resize(batch.b());  // FIFO: the first b arrivals made the block
  CycleResult out{.model = {},
                  .latency = {},
                  .block = Block::seal(p, std::move(admitted), batch.sealed_at),
                  .verdicts = std::move(verdicts),
                  .batch = std::move(batch),
                  .pbft = std::move(pbft)};

  // Global update.
  out.model.weights = aggregate_global(g.weights, out.block.txs());
  out.model.full_gradient = global_full_gradient(out.block.txs());
  out.model.cycle = g.cycle + 1;

  const double b = static_cast<double>(out.block.size());
  out.latency.t_local = model::t_local_update(p.delta_d, static_cast<double>(enterprises.front().train.size()), p.f_c);
  out.latency.t_up = model::t_upload(p.delta_m, p.w_up, p.gamma_up);
  out.latency.t_preprepare = out.pbft.t_preprepare;
  out.latency.t_prepare = out.pbft.t_prepare;
  out.latency.t_commit = out.pbft.t_commit;
  out.latency.t_dn = model::t_download(p.h, b, p.delta_m, p.w_dn, p.gamma_dn);
  out.latency.t_global = model::t_global_update(p.delta_m, p.n_block, p.f_c);
  return out;
}

}  // namespace cbfl::sim
