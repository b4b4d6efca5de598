#pragma once

#include <cstddef>
#include <functional>

namespace obswitch {

/// Worker count: OBSWITCH_THREADS if set and positive, otherwise
/// std::thread::hardware_concurrency() (at least 1).
std::size_t thread_count();

/// Run body(i) for i in [0, n) across thread_count() workers using static
/// contiguous chunks. body must only write to index-owned state.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace obswitch
