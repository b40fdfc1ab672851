// Copyright 2026 The lf4d Authors.
// The lf4d source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace lf4d {

// Worker count: explicit request if positive, else $LF_THREADS, else the
// machine's hardware concurrency.
inline int ResolveThreadCount(int requested = 0) {
    if (requested > 0) return requested;
    if (const char *env = std::getenv("LF_THREADS")) {
        try {
            int n = std::stoi(env);
            if (n > 0) return n;
        } catch (...) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// Calls body(begin, end) over disjoint chunks of [0, count). Chunks are
// handed out dynamically, so body must not depend on which worker runs it.
// The first exception thrown by any chunk is rethrown on the caller.
template <typename Body>
void ParallelFor(std::uint64_t count, std::uint64_t chunk, int threads, Body &&body) {
    if (count == 0) return;
    chunk = std::max<std::uint64_t>(1, chunk);
    std::uint64_t chunks = (count + chunk - 1) / chunk;
    int workers = int(std::min<std::uint64_t>(std::max(1, threads), chunks));
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto run = [&] {
        for (;;) {
            std::uint64_t c = next.fetch_add(1);
            if (c >= chunks) return;
            std::uint64_t begin = c * chunk;
            try {
                body(begin, std::min(count, begin + chunk));
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(chunks);
            }
        }
    };
    if (workers == 1) {
        run();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers - 1);
        for (int i = 1; i < workers; ++i) pool.emplace_back(run);
        run();
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace lf4d
