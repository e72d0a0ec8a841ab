#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace arrowkit {

// Runs fn(chunk_index) for every chunk in [0, num_chunks), possibly across
// threads. Callers must write per-chunk results into pre-sized slots and
// reduce them in chunk order afterwards; that keeps every aggregate
// independent of the thread count.
template <class Fn>
void parallel_for_chunks(std::size_t num_chunks, int threads, Fn&& fn) {
  if (threads < 1) threads = 1;
  if (threads == 1 || num_chunks <= 1) {
    for (std::size_t i = 0; i < num_chunks; ++i) fn(i);
    return;
  }
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(threads), num_chunks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= num_chunks || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failed.load()) std::rethrow_exception(first_error);
}

}  // namespace arrowkit
