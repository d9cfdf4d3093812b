#pragma once

#include <algorithm>
#include <cstdlib>
#include <cstddef>
#include <string>
#include <thread>
#include <vector>

namespace maskgrid {

inline std::size_t max_workers() {
  if (const char* env = std::getenv("MASKGRID_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs body(begin, end) over disjoint chunks of [0, count). Results must
// not depend on the split; pair with counter-keyed RNG streams.
template <typename Body>
void parallel_chunks(std::size_t count, Body&& body) {
  std::size_t workers = std::min(max_workers(), std::max<std::size_t>(count, 1));
  if (workers <= 1 || count < 2) {
    body(std::size_t{0}, count);
    return;
  }
  std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t begin = w * chunk;
    std::size_t end = std::min(begin + chunk, count);
    if (begin >= end) break;
    pool.emplace_back([begin, end, &body] { body(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace maskgrid
