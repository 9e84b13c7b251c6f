#include <gtest/gtest.h>

#include "cbfl/event_queue.hpp"
#include "cbfl/random.hpp"

namespace cbfl::sim {
namespace {

TEST(EventQueue, PopsInTimeOrderWithFifoTies) {
  EventQueue q;
  q.schedule(2.0, EventKind::TxArrival, 0, 1);
  q.schedule(1.0, EventKind::TxArrival, 0, 2);
  q.schedule(2.0, EventKind::ServiceComplete, 0, 3);
  q.schedule(1.0, EventKind::BlockSealed, 0, 4);
  std::vector<std::uint64_t> refs;
  while (!q.empty()) refs.push_back(q.pop().ref);
  EXPECT_EQ(refs, (std::vector<std::uint64_t>{2, 4, 1, 3}));
  EXPECT_EQ(q.now(), 2.0);
}

TEST(EventQueue, ClockNeverGoesBackwards) {
  RandomStream r(5);
  EventQueue q;
  for (int i = 0; i < 1000; ++i) q.schedule(r.uniform() * 10, EventKind::TxArrival);
  double last = 0.0;
  while (!q.empty()) {
    const Event e = q.pop();
    ASSERT_GE(e.time, last);
    last = e.time;
    if (r.uniform() < 0.3) q.schedule(last + r.uniform(), EventKind::PrepareRecv);
  }
}

TEST(EventQueue, RejectsPastEvents) {
  EventQueue q(5.0);
  EXPECT_THROW(q.schedule(4.0, EventKind::TxArrival), std::logic_error);
  q.schedule(5.0, EventKind::TxArrival);
  q.pop();
  EXPECT_THROW(q.schedule(4.999, EventKind::TxArrival), std::logic_error);
}

TEST(EventQueue, TraceAndDiscard) {
  std::vector<Event> trace;
  EventQueue q(0.0, &trace);
  q.schedule(1.0, EventKind::TxArrival);
  q.schedule(2.0, EventKind::TxArrival);
  q.schedule(3.0, EventKind::TxArrival);
  q.pop();
  q.discard_pending();
  EXPECT_TRUE(q.empty());
  EXPECT_EQ(q.now(), 1.0);
  ASSERT_EQ(trace.size(), 1u);
  const auto seq = q.schedule(1.5, EventKind::ReplySent);
  EXPECT_EQ(seq, 3u);
}

TEST(EventKindNames, AreDistinct) {
  EXPECT_EQ(to_string(EventKind::TxArrival), "TxArrival");
  EXPECT_NE(to_string(EventKind::PrepareRecv), to_string(EventKind::CommitRecv));
}

}  // namespace
}  // namespace cbfl::sim
