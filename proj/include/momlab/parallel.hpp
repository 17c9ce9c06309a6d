#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace momlab {

/// Worker cap: MOMLAB_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, n) over a fixed block partition. Each index is
/// visited exactly once; callers write results into index-addressed storage,
/// so the outcome never depends on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Pairwise (cascade) summation in index order; deterministic for a fixed input.
template <class T>
T pairwise_sum(std::span<const T> values) {
  if (values.empty()) return T{};
  if (values.size() <= 8) {
    T acc = values[0];
    for (std::size_t i = 1; i < values.size(); ++i) acc += values[i];
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

template <class T>
T pairwise_sum(const std::vector<T>& values) {
  return pairwise_sum(std::span<const T>(values.data(), values.size()));
}

}  // namespace momlab
