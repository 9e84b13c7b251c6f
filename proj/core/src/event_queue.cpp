#include "cbfl/event_queue.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cbfl::sim {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::TxArrival: return "TxArrival";
    case EventKind::ServiceComplete: return "ServiceComplete";
    case EventKind::BlockSealed: return "BlockSealed";
    case EventKind::PrePrepareRecv: return "PrePrepareRecv";
    case EventKind::PrepareRecv: return "PrepareRecv";
    case EventKind::CommitRecv: return "CommitRecv";
    case EventKind::ReplySent: return "ReplySent";
  }
  return "?";
}

EventQueue::EventQueue(double start_time, std::vector<Event>* trace)
    : now_(start_time), trace_(trace) {}

std::uint64_t EventQueue::schedule(double time, EventKind kind, std::uint32_t peer,
                                   std::uint64_t ref) {
  if (!(time >= now_) || std::isnan(time)) {
    throw std::logic_error("event scheduled at " + std::to_string(time) +
                           " before current time " + std::to_string(now_));
  }
  const std::uint64_t seq = next_seq_++;
  heap_.push(Event{time, seq, kind, peer, ref});
  return seq;
}

Event EventQueue::pop() {
  if (heap_.empty()) throw std::logic_error("pop from empty event queue");
  Event e = heap_.top();
  heap_.pop();
  now_ = e.time;
  if (trace_ != nullptr) trace_->push_back(e);
  return e;
}

void EventQueue::discard_pending() {
  while (!heap_.empty()) heap_.pop();
}

}  // namespace cbfl::sim
