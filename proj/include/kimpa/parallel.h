#pragma once

#include <cstddef>
#include <functional>

namespace kimpa {

// Default worker count: KIMPA_THREADS if set and positive, else hardware.
unsigned default_thread_count();

// Runs body(k) for k in [0, n) on up to `threads` workers. Each index is
// handled exactly once; callers write results into slot k so the merged
// output is in index order whatever the scheduling.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace kimpa
