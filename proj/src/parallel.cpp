#include "mclab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace mclab {

namespace {

int initial_thread_count() {
    if (const char* env = std::getenv("MULTICORN_LAB_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? int(hw) : 1;
}

std::atomic<int> g_threads{initial_thread_count()};

} // namespace

void set_thread_count(int n) {
    g_threads.store(n > 0 ? n : initial_thread_count());
}

int thread_count() { return g_threads.load(); }

void parallel_for(int64_t begin, int64_t end, const std::function<void(int64_t)>& fn) {
    int64_t total = end - begin;
    if (total <= 0) return;
    int workers = thread_count();
    if (workers <= 1 || total == 1) {
        for (int64_t i = begin; i < end; ++i) fn(i);
        return;
    }
    const int64_t chunk = 16;
    std::atomic<int64_t> next{begin};
    auto body = [&] {
        for (;;) {
            int64_t lo = next.fetch_add(chunk);
            if (lo >= end) return;
            int64_t hi = lo + chunk < end ? lo + chunk : end;
            for (int64_t i = lo; i < hi; ++i) fn(i);
        }
    };
    std::vector<std::thread> pool;
    int nthreads = int(std::min<int64_t>(workers, total));
    pool.reserve(size_t(nthreads) - 1);
    for (int i = 1; i < nthreads; ++i) pool.emplace_back(body);
    body();
    for (auto& th : pool) th.join();
}

} // namespace mclab
