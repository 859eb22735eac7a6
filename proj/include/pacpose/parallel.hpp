#pragma once

#include <cstddef>
#include <functional>

namespace pac {

// Runs fn(0..n) across up to `degree` threads (0 = hardware concurrency).
// Work items must write only to their own slots; the first exception thrown
// by any item is rethrown on the calling thread after all threads join.
void parallel_for(std::size_t n, int degree, const std::function<void(std::size_t)>& fn);

}  // namespace pac
