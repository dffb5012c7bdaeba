#pragma once

#include <atomic>
#include <chrono>
#include <mutex>
#include <vector>

#include "mtcut/types.hpp"

namespace mtcut {

struct ProgressEvent {
  double seconds;
  EdgeWeight best_value;
};

/// Globally shared incumbent: best known cut value and its assignment.
///
/// The value only ever decreases. Reads of the value are lock-free; updates go
/// through tryImprove(), which compares and publishes under a mutex.
class BoundState {
 public:
  using Clock = std::chrono::steady_clock;

  BoundState() : start_(Clock::now()) {}
  explicit BoundState(Clock::time_point start) : start_(start) {}

  EdgeWeight bestValue() const { return best_value_.load(std::memory_order_acquire); }
  bool hasSolution() const { return bestValue() != kInfiniteWeight; }

  /// Publishes (value, assignment) iff value is strictly better than the
  /// incumbent. Returns whether it was published.
  bool tryImprove(EdgeWeight value, const Assignment& assignment);

  Assignment bestAssignment() const;
  std::vector<ProgressEvent> events() const;

  /// Adds a constant to every future event value; used when solving one
  /// component of a larger instance.
  void setReportOffset(EdgeWeight offset) { report_offset_ = offset; }

 private:
  Clock::time_point start_;
  std::atomic<EdgeWeight> best_value_{kInfiniteWeight};
  mutable std::mutex mutex_;
  Assignment best_assignment_;
  std::vector<ProgressEvent> events_;
  EdgeWeight report_offset_ = 0;
};

}  // namespace mtcut
