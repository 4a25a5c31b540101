#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace mldforge {

// Applies fn to every job on up to `threads` workers (0: hardware
// concurrency). Results come back in job order; the first exception (by job
// index) is rethrown.
template <class Job, class Fn>
auto parallel_map(const std::vector<Job>& jobs, Fn fn, unsigned threads = 0)
    -> std::vector<decltype(fn(jobs.front()))> {
  using R = decltype(fn(jobs.front()));
  std::vector<R> out(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < jobs.size();) {
      try {
        out[i] = fn(jobs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace mldforge
