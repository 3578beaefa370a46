#pragma once

#include <cstddef>
#include <functional>

namespace feynhopf::parallel {

/// Runtime switch between the OpenMP kernels and the serial reference path.
/// Defaults to on when compiled with OpenMP. Results are collected per
/// index and merged in index order by the callers, so both paths produce
/// byte-identical output.
bool enabled();
void set_enabled(bool on);
int max_threads();

/// Apply fn to 0..n-1. fn must only write to index-private state.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace feynhopf::parallel
