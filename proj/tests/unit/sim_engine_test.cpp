#include <gtest/gtest.h>

#include <cmath>

#include "cbfl/latency_model.hpp"
#include "cbfl/sim_engine.hpp"
#include "oracles.hpp"

namespace cbfl::sim {
namespace {

TEST(Arrivals, HorizonAndRate) {
  RandomStream r(61);
  const auto t = generate_arrivals(100.0, 100.0, r);
  ASSERT_FALSE(t.empty());
  for (std::size_t i = 1; i < t.size(); ++i) ASSERT_GT(t[i], t[i - 1]);
  EXPECT_LT(t.back(), 100.0);
  EXPECT_NEAR(static_cast<double>(t.size()), 1e4, 4 * 100.0);
  EXPECT_THROW(generate_arrivals(0.0, 1.0, r), DomainError);
}

TEST(Arrivals, CountFromStart) {
  RandomStream r(62);
  const auto t = generate_arrival_count(50.0, 10, r, 3.0);
  ASSERT_EQ(t.size(), 10u);
  EXPECT_GT(t.front(), 3.0);
}

TEST(Batching, FullBlock) {
  SystemParams p;
  auto s = RandomStreams::derive(63);
  const auto arrivals = generate_arrival_count(p.lambda, 150, s.arrivals);
  const auto b = run_leader_batching(p, arrivals, s);
  EXPECT_EQ(b.reason, SealReason::BlockFull);
  EXPECT_EQ(b.b(), 100u);
  EXPECT_EQ(b.sealed_at, b.departures.back());
  for (std::size_t i = 0; i < b.b(); ++i) {
    ASSERT_EQ(b.arrivals[i], arrivals[i]);
    ASSERT_GT(b.departures[i], b.arrivals[i]);
    if (i > 0) ASSERT_GT(b.departures[i], b.departures[i - 1]);
  }
}

TEST(Batching, TimeoutSealsEarlyWithAtLeastOneTx) {
  SystemParams p;
  p.tau = 0.02;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto s = RandomStreams::derive(64, seed);
    const auto arrivals = generate_arrival_count(p.lambda, 100, s.arrivals);
    const auto b = run_leader_batching(p, arrivals, s);
    ASSERT_EQ(b.reason, SealReason::Timeout);
    ASSERT_GE(b.b(), 1u);
    ASSERT_LT(b.b(), 100u);
    ASSERT_GE(b.sealed_at, b.first_arrival + p.tau);
  }
}

TEST(Batching, DrainedWhenFewerArrivalsThanCapacity) {
  SystemParams p;
  auto s = RandomStreams::derive(65);
  const std::vector<double> arrivals{0.1, 0.2, 0.3};
  const auto b = run_leader_batching(p, arrivals, s);
  EXPECT_EQ(b.reason, SealReason::Drained);
  EXPECT_EQ(b.b(), 3u);
  EXPECT_THROW(run_leader_batching(p, std::vector<double>{}, s), Error);
}

TEST(Batching, LongRunSojournMatchesQueueingTheory) {
  SystemParams p;
  p.n_block = 20000;
  p.tau = INFINITY;
  for (double lambda : {50.0, 150.0}) {
    p.lambda = lambda;
    auto s = RandomStreams::derive(66);
    const auto arrivals = generate_arrival_count(lambda, 20000, s.arrivals);
    const auto b = run_leader_batching(p, arrivals, s);
    const double mean = b.total_sojourn() / static_cast<double>(b.b());
    const double exact = oracle::mm1_mean_sojourn_exact(lambda, p.mu);
    EXPECT_LT(oracle::relative_error(mean, exact), 0.1) << lambda;
    const double lindley = oracle::mm1_mean_sojourn(lambda, p.mu, 200000, 10000, 7);
    EXPECT_LT(oracle::relative_error(lindley, exact), 0.05) << lambda;
  }
}

TEST(Batching, FirstTxSeesStationaryQueue) {
  // Every position in the block, the first included, has mean 1/(mu - lambda).
  SystemParams p;
  p.lambda = 200.0;
  p.n_block = 5;
  const int reps = 20000;
  std::vector<double> sum(5, 0.0);
  for (int r = 0; r < reps; ++r) {
    auto s = RandomStreams::derive(67, static_cast<std::uint64_t>(r));
    const auto arrivals = generate_arrival_count(p.lambda, 5, s.arrivals);
    const auto sj = run_leader_batching(p, arrivals, s).sojourns();
    for (int i = 0; i < 5; ++i) sum[i] += sj[i];
  }
  for (int i = 0; i < 5; ++i) {
    EXPECT_LT(oracle::relative_error(sum[i] / reps, 0.01), 0.04) << "position " << i;
  }
}

BatchResult sealed_batch(const SystemParams& p, RandomStreams& s) {
  const auto arrivals = generate_arrival_count(p.lambda, static_cast<std::size_t>(p.n_block), s.arrivals);
  return run_leader_batching(p, arrivals, s);
}

TEST(Pbft, RoundReachesQuorum) {
  SystemParams p;
  auto s = RandomStreams::derive(68);
  const auto batch = sealed_batch(p, s);
  const auto r = run_pbft_round(p, batch, s);
  EXPECT_EQ(r.leader, 0u);
  EXPECT_EQ(r.observer, 1u);
  ASSERT_EQ(r.faulty_peers.size(), 1u);
  EXPECT_NE(r.faulty_peers[0], 0u);
  EXPECT_NE(r.faulty_peers[0], 1u);
  EXPECT_EQ(r.prepare_votes, 3);
  EXPECT_EQ(r.commit_votes, 3);
  EXPECT_GT(r.t_prepare, 0.0);
  EXPECT_GT(r.t_commit, 0.0);
  EXPECT_DOUBLE_EQ(r.committed_at, batch.sealed_at + r.t_prepare + r.t_commit);
  EXPECT_DOUBLE_EQ(r.t_preprepare, batch.total_sojourn());
}

TEST(Pbft, FaultyPeersAreSpreadOverNonLeaderNonObserver) {
  SystemParams p;
  p.f = 3;
  p.n_peers = 10;
  p.n_block = 5;
  std::vector<int> hits(10, 0);
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    auto s = RandomStreams::derive(69, seed);
    const auto r = run_pbft_round(p, sealed_batch(p, s), s);
    ASSERT_EQ(r.faulty_peers.size(), 3u);
    for (auto id : r.faulty_peers) ++hits[id];
  }
  EXPECT_EQ(hits[0], 0);
  EXPECT_EQ(hits[1], 0);
  for (int i = 2; i < 10; ++i) EXPECT_NEAR(hits[i], 500 * 3 / 8.0, 60) << i;
}

TEST(Pbft, TooManyFaultsMakeQuorumUnreachable) {
  SystemParams p;
  auto s = RandomStreams::derive(70);
  const auto batch = sealed_batch(p, s);
  EXPECT_THROW(run_pbft_round(p, batch, s, PbftOptions{p.f + 1}), QuorumUnreachable);
  p.f = 2;
  p.n_peers = 7;
  EXPECT_THROW(run_pbft_round(p, batch, s, PbftOptions{3}), QuorumUnreachable);
  EXPECT_NO_THROW(run_pbft_round(p, batch, s, PbftOptions{0}));
}

TEST(Pbft, FaultFreeSinglePeer) {
  SystemParams p;
  p.f = 0;
  p.n_peers = 1;
  auto s = RandomStreams::derive(71);
  const auto r = run_pbft_round(p, sealed_batch(p, s), s);
  EXPECT_EQ(r.observer, 0u);
  EXPECT_EQ(r.prepare_votes, 1);
  EXPECT_TRUE(r.faulty_peers.empty());
}

TEST(Pbft, PhaseMeanMatchesModel) {
  SystemParams p;
  p.n_block = 1;
  const int rounds = 20000;
  double sum = 0;
  for (int i = 0; i < rounds; ++i) {
    auto s = RandomStreams::derive(72, static_cast<std::uint64_t>(i));
    const auto r = run_pbft_round(p, sealed_batch(p, s), s);
    sum += r.t_prepare + r.t_commit;
  }
  const double want = 2 * model::t_prepare_phase(p.f, p.lambda, p.mu);
  EXPECT_LT(oracle::relative_error(sum / rounds, want), 0.03);
}

TEST(Consensus, TraceIsCausalAndDeterministic) {
  SystemParams p;
  std::vector<Event> t1, t2;
  auto s1 = RandomStreams::derive(73);
  auto s2 = RandomStreams::derive(73);
  const auto r1 = run_consensus(p, s1, &t1);
  const auto r2 = run_consensus(p, s2, &t2);
  EXPECT_EQ(t1, t2);
  EXPECT_EQ(r1.pbft.committed_at, r2.pbft.committed_at);
  ASSERT_FALSE(t1.empty());
  for (std::size_t i = 1; i < t1.size(); ++i) ASSERT_GE(t1[i].time, t1[i - 1].time);
  EXPECT_EQ(t1.back().kind, EventKind::ReplySent);
  EXPECT_GE(r1.pbft.committed_at, r1.batch.sealed_at);
  EXPECT_GE(r1.batch.sealed_at, r1.batch.first_arrival);
}

}  // namespace
}  // namespace cbfl::sim
