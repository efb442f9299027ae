#pragma once

#include <cstddef>
#include <type_traits>
#include <utility>

namespace hp::par {

// Execution policy for the data-parallel kernels. Every parallel entry point
// also runs under Exec::serial, which is the reference path the tests compare
// against.
enum class Exec { serial, parallel };

// Thread cap: min(HP_THREADS, omp_get_max_threads()). 1 when OpenMP is absent.
int max_threads();

// Override the cap programmatically (0 restores the environment default).
void set_thread_cap(int cap);

namespace detail {
void run_indexed(std::size_t count, Exec exec, void (*trampoline)(void*, std::size_t), void* ctx);
}

// Map `body(i)` over i in [0, count). Parallel mode distributes indices over
// OpenMP threads; each index must write only to its own slots.
template <class F>
void for_each_index(std::size_t count, Exec exec, F&& body) {
    using Fn = std::decay_t<F>;
    Fn fn = std::forward<F>(body);
    detail::run_indexed(
        count, exec,
        [](void* ctx, std::size_t i) { (*static_cast<Fn*>(ctx))(i); },
        &fn);
}

} // namespace hp::par
