#include "fedpower/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace fedpower {

namespace {
std::atomic<int> g_threads{0};
}

int thread_count() { return g_threads.load(std::memory_order_relaxed); }

void set_thread_count(int n) { g_threads.store(n < 0 ? 0 : n, std::memory_order_relaxed); }

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FEDPOWER_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
    }
  }
  return 0;
}

}  // namespace fedpower
