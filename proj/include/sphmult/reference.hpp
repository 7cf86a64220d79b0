#pragma once

// Serial reference transforms: direct nested loops over nodes and basis
// functions, no longitude-sum factorization, no threading. Slow on purpose.
// The unit tests pin the OpenMP kernels against these, and the benchmark
// target compares their throughput.

#include <span>
#include <vector>

#include "sphmult/harmonic_basis.hpp"
#include "sphmult/quadrature.hpp"

namespace sphmult::reference {

CoeffTable forward(const SphereGrid& grid, int K, std::span<const double> values);

std::vector<double> synthesize(const SphereGrid& grid, const CoeffTable& coeffs);

/// Zonal synthesis by term-by-term Gegenbauer evaluation (no batch
/// recurrence sharing), plain summation.
double synthesize_zonal_direct(int m, std::span<const double> a, double u);

} // namespace sphmult::reference
