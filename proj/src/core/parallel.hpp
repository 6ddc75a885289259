#pragma once

#include <cstddef>
#include <functional>

namespace rwlab {

// Runs fn(block_index, begin, end) over fixed-size blocks of [0, n).
// Blocks are assigned to workers dynamically but block boundaries never depend
// on the thread count, so per-block results can be combined in index order for
// bit-identical output at any parallelism level.
void parallel_for_blocks(std::size_t n, std::size_t block_size, int threads,
                         const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

int resolve_threads(int requested);

}  // namespace rwlab
