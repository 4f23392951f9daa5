#ifndef DLC_PARALLEL_HPP
#define DLC_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dlc {

/// Runs `body(chunk)` for every chunk in [0, chunks) on up to `workers`
/// threads. Chunks are claimed dynamically; callers must make each chunk's
/// output depend only on the chunk id so results are worker-count independent.
template <class Body>
void parallel_chunks(std::uint64_t chunks, unsigned workers, Body&& body) {
  workers = std::max(1u, workers);
  if (workers == 1 || chunks <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    try {
      for (std::uint64_t c = next++; c < chunks; c = next++) body(c);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = chunks;
    }
  };
  std::vector<std::jthread> pool;
  const auto spawn = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks)) - 1;
  pool.reserve(spawn);
  for (unsigned i = 0; i < spawn; ++i) pool.emplace_back(run);
  run();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace dlc

#endif  // DLC_PARALLEL_HPP
