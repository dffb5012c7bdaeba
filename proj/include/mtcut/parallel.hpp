#pragma once

#include <cstddef>

#include <tbb/parallel_for.h>

namespace mtcut {

/// Runs fn(i) for i in [0, count); iterations must be independent.
template <typename Fn>
void parallelFor(std::size_t count, int threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  tbb::parallel_for(std::size_t{0}, count, [&](std::size_t i) { fn(i); });
}

}  // namespace mtcut
