#pragma once

#include <cstdint>
#include <functional>

namespace rawmamba {

/// Worker cap: RAWMAMBA_THREADS if set, else hardware concurrency.
int thread_count();

/// Runs fn over [0,n) split into contiguous per-worker chunks. The partition
/// depends only on n and the configured worker count, and chunks are disjoint,
/// so results are deterministic as long as fn writes only inside its range.
void parallel_for(int64_t n, const std::function<void(int64_t, int64_t)>& fn);

}  // namespace rawmamba
