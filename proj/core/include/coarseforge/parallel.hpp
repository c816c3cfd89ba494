#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace coarseforge {

// Worker count used by parallel_for. Initialised from COARSEFORGE_THREADS, else 1.
unsigned thread_count();
void set_thread_count(unsigned n);

// Runs body(i) for i in [0, n). Each index must write only to its own slot so
// results do not depend on the worker count.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace coarseforge
