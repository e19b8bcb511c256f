#pragma once

#include <cstddef>
#include <functional>

namespace freearr {

/// Process-wide cap used when a config asks for 0 threads. Starts at hardware_concurrency.
unsigned default_threads();
void set_default_threads(unsigned threads);

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 = default_threads()).
/// Each index runs exactly once; if several bodies throw, the exception of the smallest index is rethrown.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace freearr
