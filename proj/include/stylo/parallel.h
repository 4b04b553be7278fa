#ifndef STYLO_PARALLEL_H_
#define STYLO_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace stylo {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Splits [0, n) into fixed chunks of `chunk` items, runs
// body(begin, end, acc) on each chunk with its own accumulator (from
// `init()`), then folds the accumulators with merge(into, from) in chunk
// order. Chunk boundaries depend only on n and `chunk`, so the result is the
// same for any thread count, including for floating-point accumulators.
template <typename T, typename Init, typename Body, typename Merge>
T parallel_reduce_chunks(std::size_t n, std::size_t chunk, unsigned threads,
                         Init init, Body body, Merge merge) {
  chunk = std::max<std::size_t>(chunk, 1);
  const std::size_t chunks = (n + chunk - 1) / chunk;
  T result = init();
  if (chunks == 0) return result;

  std::vector<T> partial;
  partial.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) partial.push_back(init());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    try {
      for (std::size_t c = next++; c < chunks; c = next++) {
        body(c * chunk, std::min(n, (c + 1) * chunk), partial[c]);
      }
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  };

  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), chunks));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  for (const T& p : partial) merge(result, p);
  return result;
}

template <typename T, typename Body, typename Merge>
T parallel_reduce_chunks(std::size_t n, std::size_t chunk, unsigned threads,
                         Body body, Merge merge) {
  return parallel_reduce_chunks<T>(
      n, chunk, threads, [] { return T{}; }, body, merge);
}

// Runs body(i) for every i in [0, n). Each index is handled exactly once;
// the first exception thrown by any call is rethrown.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body body) {
  struct Empty {};
  parallel_reduce_chunks<Empty>(
      n, 1, threads,
      [&](std::size_t begin, std::size_t end, Empty&) {
        for (std::size_t i = begin; i < end; ++i) body(i);
      },
      [](Empty&, const Empty&) {});
}

}  // namespace stylo

#endif  // STYLO_PARALLEL_H_
