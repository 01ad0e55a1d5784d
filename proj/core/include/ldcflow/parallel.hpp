#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace ldc {

/// Worker threads for independent evaluations: LDC_THREADS if set to a
/// positive integer, otherwise the hardware concurrency (at least 1).
std::size_t worker_count();

/// Split [0, count) into contiguous chunks and call fn(begin, end, chunk) on
/// each, concurrently. Returns the number of chunks; chunk i covers a range
/// before chunk i + 1, so callers can reduce results in chunk order.
template <class Fn>
std::size_t parallel_chunks(std::size_t count, Fn&& fn) {
  const std::size_t workers = std::max<std::size_t>(1, std::min(worker_count(), count));
  if (workers <= 1) {
    fn(std::size_t{0}, count, std::size_t{0});
    return 1;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t per = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(count, w * per);
    const std::size_t end = std::min(count, begin + per);
    threads.emplace_back([&, begin, end, w] {
      try {
        fn(begin, end, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return workers;
}

}  // namespace ldc
