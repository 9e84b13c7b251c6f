#pragma once

#include <cstdint>
#include <queue>
#include <string_view>
#include <vector>

namespace cbfl::sim {

enum class EventKind : std::uint8_t {
  TxArrival,
  ServiceComplete,
  BlockSealed,
  PrePrepareRecv,
  PrepareRecv,
  CommitRecv,
  ReplySent,
};

std::string_view to_string(EventKind kind);

struct Event {
  double time = 0.0;
  std::uint64_t seq = 0;
  EventKind kind = EventKind::TxArrival;
  std::uint32_t peer = 0;
  std::uint64_t ref = 0;  // event-specific: tx index, message index, ...

  bool operator==(const Event&) const = default;
};

// Min-queue over (time, seq). seq is assigned at scheduling time, so ties in
// time pop in creation order. Scheduling into the past is a logic error.
class EventQueue {
 public:
  // Popped events are appended to *trace when it is non-null.
  explicit EventQueue(double start_time = 0.0, std::vector<Event>* trace = nullptr);

  std::uint64_t schedule(double time, EventKind kind, std::uint32_t peer = 0,
                         std::uint64_t ref = 0);
  Event pop();
  bool empty() const noexcept { return heap_.empty(); }
  std::size_t size() const noexcept { return heap_.size(); }
  double now() const noexcept { return now_; }
  const Event& top() const { return heap_.top(); }

  // Drops every pending event; the clock and the seq counter are kept.
  void discard_pending();

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const noexcept {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  double now_;
  std::uint64_t next_seq_ = 0;
  std::vector<Event>* trace_;
};

}  // namespace cbfl::sim
