// bench_kernels.cpp
// Times the OpenMP kernels against their serial reference builds, plus one
// full stepper comparison, and prints a speedup table.

#include <cstdio>
#include <string>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#else
#include <chrono>
#endif

#include "gflow/kernels.hpp"
#include "gflow/lab.hpp"
#include "gflow/schemes.hpp"

namespace {

double now() {
#if defined(_OPENMP)
    return omp_get_wtime();
#else
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
#endif
}

volatile double guard;  // keeps reductions alive

template <typename Fn>
double time_best(Fn fn, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        double t0 = now();
        fn();
        best = std::min(best, now() - t0);
    }
    return best;
}

void row(const std::string& name, double serial, double parallel) {
    std::printf("%-24s %12.3f us %12.3f us %8.2fx\n", name.c_str(),
                serial * 1e6, parallel * 1e6, serial / parallel);
}

} // namespace

int main(int argc, char** argv) {
    int n_side = 512;
    int reps = 20;
    if (argc > 1) n_side = std::atoi(argv[1]);
    if (argc > 2) reps = std::atoi(argv[2]);

    using namespace gflow;
    auto grid = make_grid(n_side, n_side, 2.0 * 3.14159265358979324,
                          2.0 * 3.14159265358979324);
    const std::size_t n = grid->size();

    Field a = random_init(grid, 0.3, 0.5, 1);
    Field b = random_init(grid, 0.0, 0.5, 2);
    Field c = random_init(grid, 0.0, 0.5, 3);
    Field d = random_init(grid, 0.0, 0.5, 4);
    Field out(grid);

#if defined(_OPENMP)
    std::printf("grid %dx%d, %d timed repetitions, %d threads\n", n_side, n_side,
                reps, omp_get_max_threads());
#else
    std::printf("grid %dx%d, %d timed repetitions, OpenMP disabled\n", n_side,
                n_side, reps);
#endif
    std::printf("%-24s %15s %15s %9s\n", "kernel", "serial", "parallel",
                "speedup");

    row("lincomb",
        time_best([&] { kernels::ref::lincomb(out.data(), 1.5, a.data(), -0.5,
                                              b.data(), n); }, reps),
        time_best([&] { kernels::lincomb(out.data(), 1.5, a.data(), -0.5,
                                         b.data(), n); }, reps));
    row("double_well",
        time_best([&] { kernels::ref::double_well(out.data(), a.data(), n); },
                  reps),
        time_best([&] { kernels::double_well(out.data(), a.data(), n); }, reps));
    row("dot",
        time_best([&] { guard = kernels::ref::dot(a.data(), b.data(), n); },
                  reps),
        time_best([&] { guard = kernels::dot(a.data(), b.data(), n); }, reps));
    row("quartic_coeffs",
        time_best([&] { guard = kernels::ref::quartic_coeffs(
                            a.data(), b.data(), c.data(), d.data(), n)[2]; },
                  reps),
        time_best([&] { guard = kernels::quartic_coeffs(a.data(), b.data(),
                                                        c.data(), d.data(),
                                                        n)[2]; },
                  reps));

    // Whole-step timing (FFT-bound, so the spread is smaller than for the
    // raw kernels).
    RunConfig cfg;
    cfg.flow = FlowSpec::cahn_hilliard(0.06);
    cfg.nx = n_side;
    cfg.ny = n_side;
    cfg.dt = 1e-4;
    cfg.t_final = 1.0;
    SchemeState st = bootstrap(a, cfg);
    StepContext ctx(grid, cfg.flow);
    double t_step = time_best(
        [&] { guard = step_modified_lm(st, cfg, ctx).energy; }, reps);
    std::printf("%-24s %12.3f ms per step\n", "modified-lm step", t_step * 1e3);
    return 0;
}
