#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace wellscat {

/// Process-wide worker cap; 0 means "use hardware concurrency".
inline std::atomic<unsigned>& max_threads_setting() {
    static std::atomic<unsigned> v{0};
    return v;
}

inline void set_max_threads(unsigned n) { max_threads_setting().store(n); }

/// Runs body(i) for i in [0, n) over contiguous index chunks, one per worker.
/// Callers store results by index; any reduction is done afterwards over the
/// index-ordered results, so output never depends on the worker count.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
    if (n == 0) return;
    unsigned nt = max_threads_setting().load();
    if (nt == 0) {
        nt = std::thread::hardware_concurrency();
        if (nt == 0) nt = 1;
    }
    if (static_cast<std::size_t>(nt) > n) nt = static_cast<unsigned>(n);
    if (nt <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(nt);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    const std::size_t chunk = (n + nt - 1) / nt;
    for (unsigned t = 0; t < nt; ++t) {
        const std::size_t lo = static_cast<std::size_t>(t) * chunk;
        const std::size_t hi = lo + chunk < n ? lo + chunk : n;
        pool.emplace_back([&, lo, hi, t] {
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace wellscat
