#ifndef BARRIERCLOCK_PARALLEL_HPP
#define BARRIERCLOCK_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace barrierclock {

/// Worker cap: BARRIERCLOCK_THREADS when set (>=1), else hardware threads.
unsigned thread_budget();

/// Run fn(i) for i in [0, n).  Work is sharded over at most thread_budget()
/// threads; each index writes only its own output slot, so results are
/// deterministic and input-ordered regardless of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace barrierclock

#endif
