#pragma once

#include <functional>

namespace psdec {

/// Worker-thread cap: PSDEC_THREADS when set, otherwise the hardware count.
int max_threads();

/// Runs fn(k) for k in [0, count). Each index is processed serially by
/// exactly one worker, so results are identical for any thread count.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace psdec
