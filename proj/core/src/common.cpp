#include "contactforge/common.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <thread>

namespace cf {

int thread_count() {
    if (const char* env = std::getenv("CONTACTFORGE_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

void parallel_chunks(long total, const std::function<void(long, long, int)>& fn,
                     int* chunks_used) {
    const int workers = static_cast<int>(
        std::max<long>(1, std::min<long>(thread_count(), total)));
    const long chunk = (total + workers - 1) / std::max(1, workers);
    int nchunks = 0;
    std::vector<std::future<void>> futs;
    for (long b = 0; b < total; b += chunk, ++nchunks) {
        const long e = std::min(total, b + chunk);
        futs.push_back(std::async(std::launch::async, [&fn, b, e, nchunks] {
            fn(b, e, nchunks);
        }));
    }
    for (auto& f : futs) f.get();
    if (chunks_used) *chunks_used = nchunks;
}

}  // namespace cf
