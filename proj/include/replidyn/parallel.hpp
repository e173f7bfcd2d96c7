#ifndef REPLIDYN_PARALLEL_HPP
#define REPLIDYN_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace replidyn {

/// Number of worker threads to use: an explicit request wins, then the
/// REPLIDYN_THREADS environment variable, then hardware concurrency.
unsigned resolve_thread_count(unsigned requested = 0);

/// Runs fn(i) for i in [0, count) across worker threads.  Each index is
/// processed exactly once; results must be written to disjoint slots so the
/// output is identical for any thread count.  Exceptions from workers are
/// rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                  unsigned threads = 0);

}  // namespace replidyn

#endif  // REPLIDYN_PARALLEL_HPP
