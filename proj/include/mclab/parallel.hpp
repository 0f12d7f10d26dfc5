#pragma once

#include <cstdint>
#include <functional>

namespace mclab {

/// Process-wide cap on worker threads. 0 restores the hardware default.
/// The MULTICORN_LAB_THREADS environment variable seeds the initial value.
void set_thread_count(int n);
int thread_count();

/// Runs fn(i) for i in [begin, end) on up to thread_count() threads.
/// Work is handed out in fixed-size chunks by index, so results written
/// by index never depend on the schedule.
void parallel_for(int64_t begin, int64_t end, const std::function<void(int64_t)>& fn);

} // namespace mclab
