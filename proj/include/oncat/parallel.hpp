#pragma once

#include <algorithm>
#include <functional>
#include <future>
#include <thread>
#include <vector>

namespace oncat {

/// Chunked parallel loop over [begin, end). fn must be safe to call
/// concurrently for distinct indices. threads = 0 picks the hardware count.
inline void parallel_for(long begin, long end, const std::function<void(long)>& fn,
                         int threads = 0) {
    long total = end - begin;
    if (total <= 0) return;
    unsigned hw = threads > 0 ? static_cast<unsigned>(threads)
                              : std::max(1u, std::thread::hardware_concurrency());
    unsigned workers = static_cast<unsigned>(std::min<long>(hw, total));
    if (workers <= 1) {
        for (long i = begin; i < end; ++i) fn(i);
        return;
    }
    std::vector<std::future<void>> futs;
    long chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        long lo = begin + w * chunk;
        long hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        futs.push_back(std::async(std::launch::async, [lo, hi, &fn] {
            for (long i = lo; i < hi; ++i) fn(i);
        }));
    }
    for (auto& f : futs) f.get();
}

}  // namespace oncat
