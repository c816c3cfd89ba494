#include "coarseforge/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace coarseforge {

namespace {

unsigned initial_threads() {
  if (const char* env = std::getenv("COARSEFORGE_THREADS")) {
    try {
      int v = std::stoi(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return 1;
}

std::atomic<unsigned>& threads() {
  static std::atomic<unsigned> value{initial_threads()};
  return value;
}

}  // namespace

unsigned thread_count() { return threads().load(); }

void set_thread_count(unsigned n) { threads().store(n == 0 ? 1 : n); }

}  // namespace coarseforge
