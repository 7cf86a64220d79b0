// Throughput comparison of the OpenMP transform kernels against the serial
// reference implementations, plus the zonal verifier scans. Run manually:
//   build/bench/sphmult_bench [K]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include <omp.h>

#include "sphmult/analysis.hpp"
#include "sphmult/harmonic_basis.hpp"
#include "sphmult/kernels.hpp"
#include "sphmult/multipliers.hpp"
#include "sphmult/reference.hpp"
#include "sphmult/rng.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

template <typename F>
double time_ms(int reps, F&& fn) {
    const auto start = clock_type::now();
    for (int r = 0; r < reps; ++r) fn();
    const auto stop = clock_type::now();
    return std::chrono::duration<double, std::milli>(stop - start).count() / reps;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

int main(int argc, char** argv) {
    const int K = argc > 1 ? std::atoi(argv[1]) : 48;
    std::printf("threads: %d, band limit K = %d\n\n", omp_get_max_threads(), K);

    sphmult::Rng rng(7);
    const sphmult::CoeffTable coeffs = sphmult::random_band_limited(rng, K);
    const sphmult::SphereGrid grid = sphmult::sphere_grid(K);
    const sphmult::HarmonicBasis basis(grid, K);

    const std::vector<double> values = basis.synthesize(coeffs);

    std::printf("%-28s %12s %12s %9s %12s\n", "kernel", "serial ms", "openmp ms", "speedup",
                "max |diff|");

    {
        sphmult::CoeffTable ref, fast;
        const double t_ref = time_ms(3, [&] { ref = sphmult::reference::forward(grid, K, values); });
        const double t_omp = time_ms(20, [&] { fast = basis.forward(values); });
        std::printf("%-28s %12.3f %12.3f %8.1fx %12.3e\n", "forward transform", t_ref, t_omp,
                    t_ref / t_omp, max_abs_diff(ref.v, fast.v));
    }
    {
        std::vector<double> ref, fast;
        const double t_ref =
            time_ms(3, [&] { ref = sphmult::reference::synthesize(grid, coeffs); });
        const double t_omp = time_ms(20, [&] { fast = basis.synthesize(coeffs); });
        std::printf("%-28s %12.3f %12.3f %8.1fx %12.3e\n", "synthesis", t_ref, t_omp,
                    t_ref / t_omp, max_abs_diff(ref, fast));
    }
    {
        // memoization is per instance; separate families keep the runs honest
        const sphmult::ZonalKernel kern = sphmult::power_law_zonal(2, 256, 3.5);
        const std::vector<double> ts = sphmult::log_spaced(1e-3, 1e-1, 64);
        std::vector<double> ref(ts.size()), fast(ts.size());
        const double t_ref = time_ms(1, [&] {
            for (std::size_t i = 0; i < ts.size(); ++i) {
                std::vector<double> dev(257);
                for (int k = 0; k <= 256; ++k)
                    dev[k] = (1.0 - sphmult::shifting_multiplier(k, ts[i], 2)) * kern.a(k);
                ref[i] = sphmult::reference::synthesize_zonal_direct(2, dev, 1.0);
            }
        });
        const sphmult::ShiftingFamily family(2, 256);
        const double t_omp = time_ms(1, [&] {
#pragma omp parallel for schedule(dynamic)
            for (std::size_t i = 0; i < ts.size(); ++i)
                fast[i] = sphmult::holder_integral(kern, family, ts[i]);
        });
        std::printf("%-28s %12.3f %12.3f %8.1fx %12.3e\n", "holder scan (64 t)", t_ref, t_omp,
                    t_ref / t_omp, max_abs_diff(ref, fast));
    }

    std::printf("\nnote: serial columns use the naive reference path; differences are\n"
                "quadrature-identical sums taken in different orders.\n");
    return 0;
}
