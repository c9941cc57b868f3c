#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace selberg {

/// Worker count for internal parallel loops: hardware concurrency, capped by
/// the SELBERG_SIGNS_THREADS environment variable when it is set.
unsigned thread_budget();

/// Calls body(begin, end) over contiguous chunks of [0, count), one chunk per
/// worker. Results must not depend on the chunking.
template <typename Body>
void parallel_for(std::size_t count, Body&& body, std::size_t min_chunk = 1024) {
  const std::size_t workers =
      std::min<std::size_t>(thread_budget(), std::max<std::size_t>(1, count / std::max<std::size_t>(min_chunk, 1)));
  if (workers <= 1) {
    if (count) body(std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&, w, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace selberg
