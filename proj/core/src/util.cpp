#include "mclaw/util.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <thread>

namespace mclaw {

int worker_count() {
  static const int cached = [] {
    const char* env = std::getenv("MCLAW_THREADS");
    if (!env || !*env) return 1;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || v < 1) return 1;
    return static_cast<int>(std::min<long>(v, 256));
  }();
  return cached;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
  const int workers = worker_count();
  // Thread spawn overhead only pays off for wide loops.
  if (workers <= 1 || n < 8192) {
    fn(0, n);
    return;
  }
  const std::size_t t = std::min<std::size_t>(workers, n);
  const std::size_t chunk = (n + t - 1) / t;
  std::vector<std::thread> pool;
  pool.reserve(t - 1);
  for (std::size_t w = 1; w < t; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(fn, begin, end);
  }
  fn(0, std::min(n, chunk));
  for (auto& th : pool) th.join();
}

std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace mclaw
