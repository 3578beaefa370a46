#include "feynhopf/parallel.hpp"

#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace feynhopf::parallel {

namespace {
#ifdef _OPENMP
std::atomic<bool> g_enabled{true};
#else
std::atomic<bool> g_enabled{false};
#endif
}  // namespace

bool enabled() { return g_enabled.load(std::memory_order_relaxed); }

void set_enabled(bool on) {
#ifndef _OPENMP
  on = false;
#endif
  g_enabled.store(on, std::memory_order_relaxed);
}

int max_threads() {
#ifdef _OPENMP
  return enabled() ? omp_get_max_threads() : 1;
#else
  return 1;
#endif
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
#ifdef _OPENMP
  if (enabled() && n > 1) {
    const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace feynhopf::parallel
