// Times the OpenMP Monte Carlo kernels against their serial reference
// implementations and verifies that both produce identical bytes. Run with
// OMP_NUM_THREADS (or MFG_SEQTEST_THREADS via the CLI) to vary the pool.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "seqtest/hitting.hpp"
#include "seqtest/math_util.hpp"
#include "seqtest/paths.hpp"
#include "seqtest/value_surface.hpp"

using namespace seqtest;

namespace {

double now_s() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

struct Row {
    std::string name;
    double serial_s;
    double parallel_s;
    bool identical;
};

void print_rows(const std::vector<Row>& rows) {
    std::printf("%-28s %10s %10s %8s %s\n", "kernel", "serial", "parallel", "speedup",
                "identical");
    for (const auto& r : rows) {
        std::printf("%-28s %9.3fs %9.3fs %7.2fx %s\n", r.name.c_str(), r.serial_s,
                    r.parallel_s, r.serial_s / r.parallel_s, r.identical ? "yes" : "NO");
    }
}

} // namespace

int main(int argc, char** argv) {
    long paths = 200000;
    if (argc > 1) paths = std::atol(argv[1]);
#ifdef _OPENMP
    std::printf("threads: %d, paths: %ld\n\n", omp_get_max_threads(), paths);
#else
    std::printf("OpenMP disabled, paths: %ld\n\n", paths);
#endif

    const auto eta = VolatilityCurve::constant(1.0, 5.0, 512);
    std::vector<Row> rows;

    {
        double t0 = now_s();
        const auto serial = sample_conditional_paths_serial(eta, 0.0, 1, 0.005, paths, 7);
        const double ts = now_s() - t0;
        t0 = now_s();
        const auto parallel = sample_conditional_paths(eta, 0.0, 1, 0.005, paths, 7);
        const double tp = now_s() - t0;
        rows.push_back({"conditional paths", ts, tp, serial.llr == parallel.llr});
    }
    {
        double t0 = now_s();
        const auto serial = sample_unconditional_paths_serial(eta, 0.5, 0.005, paths, 7);
        const double ts = now_s() - t0;
        t0 = now_s();
        const auto parallel = sample_unconditional_paths(eta, 0.5, 0.005, paths, 7);
        const double tp = now_s() - t0;
        rows.push_back({"unconditional paths", ts, tp,
                        serial.llr == parallel.llr && serial.labels == parallel.labels});
    }
    {
        const ValueSurface s = solve_value(eta, LossModel::cross_entropy(), 0.1, 400, 400);
        const auto walls = LogitBoundaries::from_probability(extract_boundaries(s));
        const auto out = uniform_nodes(0.0, 5.0, 250);
        double t0 = now_s();
        const auto serial = hitting_cdf_mc_serial(walls, eta, 0.0, 1, paths, 0.005, 7, out);
        const double ts = now_s() - t0;
        t0 = now_s();
        const auto parallel = hitting_cdf_mc(walls, eta, 0.0, 1, paths, 0.005, 7, out);
        const double tp = now_s() - t0;
        rows.push_back({"boundary hitting MC", ts, tp, serial.cdf == parallel.cdf});
    }

    print_rows(rows);
    for (const auto& r : rows) {
        if (!r.identical) {
            std::printf("\nmismatch between serial and parallel output\n");
            return 1;
        }
    }
    return 0;
}
