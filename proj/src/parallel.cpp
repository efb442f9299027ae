#include "hp/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hp::par {

namespace {
std::atomic<int> g_thread_cap{0};

int env_threads() {
    const char* s = std::getenv("HP_THREADS");
    if (!s) return 0;
    int v = std::atoi(s);
    return v > 0 ? v : 0;
}
} // namespace

int max_threads() {
#ifdef _OPENMP
    int hw = omp_get_max_threads();
#else
    int hw = 1;
#endif
    int cap = g_thread_cap.load();
    if (cap <= 0) cap = env_threads();
    if (cap > 0) hw = std::min(hw, cap);
    return std::max(1, hw);
}

void set_thread_cap(int cap) { g_thread_cap.store(cap); }

namespace detail {

void run_indexed(std::size_t count, Exec exec, void (*trampoline)(void*, std::size_t), void* ctx) {
    if (count == 0) return;
#ifdef _OPENMP
    if (exec == Exec::parallel && count > 1 && max_threads() > 1) {
        const int nt = max_threads();
#pragma omp parallel for num_threads(nt) schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(count); ++i)
            trampoline(ctx, static_cast<std::size_t>(i));
        return;
    }
#else
    (void)exec;
#endif
    for (std::size_t i = 0; i < count; ++i) trampoline(ctx, i);
}

} // namespace detail
} // namespace hp::par
