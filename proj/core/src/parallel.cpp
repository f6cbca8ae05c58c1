#include "hasse/parallel.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hasse {

unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

namespace {

void run_workers(std::size_t tasks, unsigned workers, const std::function<void(std::size_t)>& claim_loop) {
  if (workers == 0) workers = default_workers();
  const auto n = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(tasks, 1)));
  if (n <= 1) {
    claim_loop(0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (unsigned w = 0; w < n; ++w) pool.emplace_back(claim_loop, w);
  for (auto& t : pool) t.join();
}

}  // namespace

void parallel_for(std::size_t tasks, unsigned workers, const std::function<void(std::size_t)>& body) {
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::size_t err_task = tasks;
  std::exception_ptr err;
  run_workers(tasks, workers, [&](std::size_t) {
    for (std::size_t i = next++; i < tasks; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (i < err_task) {
          err_task = i;
          err = std::current_exception();
        }
      }
    }
  });
  if (err) std::rethrow_exception(err);
}

std::size_t parallel_find_first(std::size_t tasks, unsigned workers,
                                const std::function<bool(std::size_t)>& body) {
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{tasks};
  std::mutex err_mu;
  std::size_t err_task = tasks;
  std::exception_ptr err;
  run_workers(tasks, workers, [&](std::size_t) {
    for (std::size_t i = next++; i < tasks; i = next++) {
      if (i > best.load()) break;
      try {
        if (body(i)) {
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
        }
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (i < err_task) {
          err_task = i;
          err = std::current_exception();
        }
      }
    }
  });
  if (err && err_task < best.load()) std::rethrow_exception(err);
  return best.load();
}

}  // namespace hasse
