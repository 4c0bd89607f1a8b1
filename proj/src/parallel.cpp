// parallel.cpp

#include "torus_green/parallel.hpp"

#include <omp.h>

#include <atomic>
#include <cstdlib>

namespace tg {

namespace {
std::atomic<int> override_threads{0};
}

void set_thread_override(int n) { override_threads = n > 0 ? n : 0; }

int configured_threads() {
  if (const int o = override_threads.load(); o > 0) return o;
  if (const char* env = std::getenv("TORUS_GREEN_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return int(n);
  }
  return omp_get_max_threads();
}

}  // namespace tg
