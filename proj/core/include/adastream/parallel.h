#ifndef ADASTREAM_PARALLEL_H_
#define ADASTREAM_PARALLEL_H_

#include <cstddef>
#include <functional>
#include <vector>

namespace adastream {

// Worker count: ADASTREAM_THREADS when set to a positive integer, otherwise
// the hardware concurrency (at least 1).
std::size_t worker_count();

// Calls fn(i) for every i in [0, n), possibly on several threads. Each index
// is handled exactly once; callers write results into slot i so the output
// does not depend on the thread count. The first exception thrown by any
// call is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  std::size_t threads = worker_count());

template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn, std::size_t threads = worker_count()) {
  std::vector<T> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = fn(i); }, threads);
  return out;
}

}  // namespace adastream

#endif  // ADASTREAM_PARALLEL_H_
