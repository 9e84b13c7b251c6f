#include <gtest/gtest.h>

#include "cbfl/experiment.hpp"
#include "cbfl/latency_model.hpp"

namespace cbfl::sim {
namespace {

TEST(Experiment, ThreadCountDoesNotChangeResults) {
  SystemParams p;
  const auto one = run_experiment(p, 500, 5, ExperimentOptions{"x", 500, 1});
  const auto four = run_experiment(p, 500, 5, ExperimentOptions{"x", 500, 4});
  EXPECT_EQ(one, four);
}

TEST(Experiment, ReportsEveryComponent) {
  SystemParams p;
  std::vector<ReplicationSample> samples;
  const auto stats = run_experiment(p, 200, 6, {}, &samples);
  ASSERT_EQ(samples.size(), 200u);
  ASSERT_EQ(stats.components.size(), 11u);
  EXPECT_EQ(stats.mean_b, 100.0);
  double sum = 0;
  for (const auto& s : samples) sum += s.latency.t_consensus();
  const auto& c = stats.component("t_consensus");
  EXPECT_NEAR(c.mean, sum / 200, 1e-12);
  EXPECT_DOUBLE_EQ(c.analytic, model::t_consensus(p, 100));
  ASSERT_TRUE(c.std_err.has_value());
  EXPECT_GT(*c.std_err, 0.0);
  // Deterministic components carry no sampling error.
  const auto& up = stats.component("t_up");
  EXPECT_EQ(up.mean, up.analytic);
  EXPECT_EQ(*up.std_err, 0.0);
  EXPECT_EQ(*up.rel_error, 0.0);
  EXPECT_THROW(stats.component("nope"), Error);
}

TEST(Experiment, SingleReplicationHasNoStdErr) {
  const auto stats = run_experiment(SystemParams{}, 1, 7);
  EXPECT_FALSE(stats.component("t_total").std_err.has_value());
  EXPECT_THROW(run_experiment(SystemParams{}, 0, 7), Error);
}

TEST(Experiment, AnalyticUsesRealizedBatch) {
  SystemParams p;
  p.tau = 0.05;
  const auto stats = run_experiment(p, 300, 8);
  EXPECT_LT(stats.mean_b, 100.0);
  EXPECT_DOUBLE_EQ(stats.component("t_consensus").analytic, model::t_consensus(p, stats.mean_b));
}

}  // namespace
}  // namespace cbfl::sim
