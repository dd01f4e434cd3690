#ifndef CURRENTLAB_PARALLEL_H_
#define CURRENTLAB_PARALLEL_H_

#include <functional>

namespace currentlab {

// Runs fn(0..n-1) on up to `threads` worker threads. Each index is handled
// exactly once; callers write results into per-index slots, so the outcome
// does not depend on scheduling. The first exception thrown is rethrown.
void ParallelFor(int n, int threads, const std::function<void(int)>& fn);

}  // namespace currentlab

#endif  // CURRENTLAB_PARALLEL_H_
