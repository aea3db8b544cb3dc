#pragma once

#include <cstddef>
#include <functional>

namespace olct {

/// Worker threads used for independent output samples. 0 selects the
/// hardware concurrency. Results do not depend on this value.
void set_thread_count(int n);
int thread_count();

/// Calls body(i) for i in [0, n), split into contiguous blocks across threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace olct
