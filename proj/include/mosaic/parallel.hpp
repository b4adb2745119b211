#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace mosaic::util {

inline std::atomic<int>& job_slot() {
    static std::atomic<int> jobs{1};
    return jobs;
}

inline void set_jobs(int n) { job_slot().store(n < 1 ? 1 : n); }
inline int jobs() { return job_slot().load(); }

// Run f(shard) for shard = 0..num_shards-1. Shard results must be collected
// into per-shard storage and merged in shard order by the caller so that
// the outcome does not depend on scheduling.
template <typename F>
void parallel_shards(int num_shards, F&& f) {
    int workers = std::min(jobs(), num_shards);
    if (workers <= 1) {
        for (int s = 0; s < num_shards; ++s) f(s);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int s = next.fetch_add(1); s < num_shards; s = next.fetch_add(1)) f(s);
        });
    for (auto& t : pool) t.join();
}

}  // namespace mosaic::util
