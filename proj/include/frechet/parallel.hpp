#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

#include "frechet/random.hpp"
#include "frechet/report.hpp"

namespace frechet {

inline unsigned worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs body(i) for i in [0, n) on a worker pool. Results must be written to
// per-index slots; the schedule does not affect them.
template <class Body>
void parallel_for(std::size_t n, Body&& body, unsigned workers = 0) {
  if (workers == 0) workers = worker_count();
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        if (failed) return;
        try {
          body(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
          return;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

inline constexpr std::uint64_t kSweepChunk = 8192;

// Splits `trials` into fixed chunks, each with its own substream of `seed`, and
// merges the chunk reports in order. The result is independent of thread count.
//
// chunk_body(Rng&, first_trial, count) -> ViolationReport
template <class ChunkBody>
ViolationReport chunked_sweep(std::uint64_t trials, std::uint64_t seed, ChunkBody&& chunk_body,
                              unsigned workers = 0) {
  const std::uint64_t chunks = (trials + kSweepChunk - 1) / kSweepChunk;
  std::vector<ViolationReport> parts(chunks);
  parallel_for(
      chunks,
      [&](std::size_t c) {
        Rng rng = substream(seed, {0x5357ULL, c});
        const std::uint64_t first = c * kSweepChunk;
        parts[c] = chunk_body(rng, first, std::min(kSweepChunk, trials - first));
      },
      workers);
  ViolationReport total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

}  // namespace frechet
