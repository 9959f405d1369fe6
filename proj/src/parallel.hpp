#pragma once

#include <cstddef>
#include <functional>

namespace lmgp {

// Worker count: requested if > 0, otherwise hardware concurrency, in both
// cases capped by the LONGMEM_GP_THREADS environment variable.
int worker_count(int requested = 0);

// Runs fn(i) for i in [0, n). Results must not depend on the schedule; the
// samplers guarantee that through counter-based per-index randomness.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

} // namespace lmgp
