// Times the serial profile-count kernel against the threaded one and checks
// they agree. Usage: egn_bench [n] [avg_degree] (defaults 20, 6).
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "egn/equilibria.hpp"
#include "egn/game.hpp"
#include "egn/graph.hpp"
#include "egn/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 20;
    const double avg = argc > 2 ? std::atof(argv[2]) : 6.0;
    const egn::Graph g = egn::Graph::erdos_renyi(n, avg, 7);
    const egn::EgnInstance inst(
        g, egn::canonical_matrix(egn::SweepGameClass::Coordination, 2.5));

    std::printf("counting all %lld profile verdicts on a %d-vertex graph\n",
                1ll << n, n);

    auto t0 = std::chrono::steady_clock::now();
    const egn::ClassCounts serial = egn::count_classified_serial(inst);
    const double serial_s = seconds_since(t0);
    std::printf("serial:      %8.3f s  (sne=%lld ne-only=%lld)\n", serial_s,
                static_cast<long long>(serial.strict),
                static_cast<long long>(serial.weak_only));

#ifdef _OPENMP
    const int max_jobs = omp_get_max_threads();
#else
    const int max_jobs = 1;
#endif
    for (int jobs = 1; jobs <= max_jobs; jobs *= 2) {
        t0 = std::chrono::steady_clock::now();
        const egn::ClassCounts parallel = egn::count_classified(inst, jobs);
        const double parallel_s = seconds_since(t0);
        if (!(parallel == serial)) {
            std::printf("MISMATCH at jobs=%d\n", jobs);
            return 1;
        }
        std::printf("jobs=%2d:     %8.3f s  speedup %.2fx\n", jobs, parallel_s,
                    serial_s / parallel_s);
    }
    std::puts("parallel counts match the serial reference");
    return 0;
}
