#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace kmlift {

struct BudgetExceeded : std::runtime_error {
  BudgetExceeded(const std::string& what, double needed, double limit)
      : std::runtime_error(what + ": needs about " + std::to_string(static_cast<long double>(needed)) +
                           " steps, limit " + std::to_string(static_cast<long double>(limit))),
        needed(needed),
        limit(limit) {}
  double needed, limit;
};

struct Budget {
  double max_steps = 2e9;
  int workers = 1;

  void check(const std::string& what, double needed) const {
    if (needed > max_steps) throw BudgetExceeded(what, needed, max_steps);
  }
};

// Run fn(begin, end, worker) over [0, n) split into contiguous chunks.
inline void parallel_chunks(std::int64_t n, int workers, const std::function<void(std::int64_t, std::int64_t, int)>& fn) {
  if (workers <= 1 || n < 2) {
    fn(0, n, 0);
    return;
  }
  std::vector<std::thread> pool;
  std::int64_t step = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    std::int64_t b = w * step, e = std::min(n, b + step);
    if (b >= e) break;
    pool.emplace_back(fn, b, e, w);
  }
  for (auto& t : pool) t.join();
}

}  // namespace kmlift
