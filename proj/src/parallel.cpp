#include "shapecat/parallel.hpp"

#include <atomic>
#include <cstdlib>

namespace shapecat::par {
namespace {

std::atomic<int> g_override{0};  // 0 = defer to environment

int env_cap() {
  const char* raw = std::getenv("SHAPECAT_THREADS");
  if (!raw || !*raw) return 0;
  const long value = std::strtol(raw, nullptr, 10);
  return value > 0 ? static_cast<int>(value) : 0;
}

}  // namespace

int thread_cap() {
  const int forced = g_override.load(std::memory_order_relaxed);
  const int cap = forced > 0 ? forced : env_cap();
#ifdef _OPENMP
  const int available = omp_get_max_threads();
#else
  const int available = 1;
#endif
  if (cap <= 0) return available;
  return cap < available ? cap : available;
}

void override_thread_cap(int n) { g_override.store(n > 0 ? n : 0, std::memory_order_relaxed); }

}  // namespace shapecat::par
