#include "mtcut/bound_state.hpp"

namespace mtcut {

bool BoundState::tryImprove(EdgeWeight value, const Assignment& assignment) {
  if (value >= bestValue()) return false;
  std::lock_guard lock(mutex_);
  if (value >= best_value_.load(std::memory_order_relaxed)) return false;
  best_assignment_ = assignment;
  best_value_.store(value, std::memory_order_release);
  const double seconds = std::chrono::duration<double>(Clock::now() - start_).count();
  events_.push_back({seconds, value + report_offset_});
  return true;
}

Assignment BoundState::bestAssignment() const {
  std::lock_guard lock(mutex_);
  return best_assignment_;
}

std::vector<ProgressEvent> BoundState::events() const {
  std::lock_guard lock(mutex_);
  return events_;
}

}  // namespace mtcut
