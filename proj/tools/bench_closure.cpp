// Timing comparison of the serial reference fixpoint against the
// OpenMP-parallel engine, and of the parallel engine across thread counts.
// Also asserts that every variant computes the identical member set.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "sn/closure.hpp"

using Clock = std::chrono::steady_clock;

static double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int main(int argc, char** argv) {
    unsigned long p = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 61;
    std::vector<sn::Nat> seed;
    for (unsigned long i = 1; i <= p; ++i) seed.push_back(sn::Nat(i));

    auto t0 = Clock::now();
    auto ref = sn::delta_reference(seed);
    double t_ref = seconds_since(t0);
    std::printf("seed 1..%lu, %zu members\n", p, ref.size());
    std::printf("%-28s %8.3fs\n", "serial reference", t_ref);

    int max_threads = omp_get_max_threads();
    for (int threads = 1; threads <= max_threads; threads *= 2) {
        t0 = Clock::now();
        auto r = sn::delta({seed.data(), seed.size()}, sn::Nat(1), {}, 0, threads);
        double t = seconds_since(t0);
        if (r.set.members != ref) {
            std::fprintf(stderr, "MISMATCH at %d threads\n", threads);
            return 1;
        }
        std::printf("parallel, %2d thread(s)       %8.3fs  (%.2fx vs reference)\n", threads, t,
                    t_ref / t);
    }
    return 0;
}
