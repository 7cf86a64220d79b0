#pragma once

// Surface areas, spherical-harmonic space dimensions and Gegenbauer
// polynomials. Everything here is a pure function of its arguments.

#include <cstdint>
#include <vector>

namespace sphmult {

/// Surface area of the unit sphere S^m in R^{m+1}: 2 pi^{(m+1)/2} / Gamma((m+1)/2).
double surface_area(int m);

/// Dimension d_k^m of the space of degree-k spherical harmonics on S^m.
/// Exact integer arithmetic; throws std::overflow_error instead of wrapping.
std::uint64_t harmonic_dim(int k, int m);

/// Sum of d_0^m + ... + d_n^m. Equals harmonic_dim(n, m+1).
std::uint64_t cumulative_dim(int n, int m);

/// Binomial coefficient, exact, overflow-checked.
std::uint64_t binomial(int n, int j);

/// Gegenbauer polynomial C_k^lambda(x) by forward three-term recurrence,
/// lambda > 0, x clamped to [-1,1] (tolerance 1e-12 outside).
double gegenbauer_eval(int k, double lambda, double x);

/// All of C_0..C_K at one point, single recurrence pass.
std::vector<double> gegenbauer_all(int K, double lambda, double x);

/// C_k^lambda(1) = Gamma(k+2 lambda) / (Gamma(2 lambda) k!), via log-Gamma.
double gegenbauer_at_one(int k, double lambda);

/// Ratios C_k^lambda(x) / C_k^lambda(1) for k = 0..K. These are the zonal
/// harmonics normalized to 1 at the pole; every multiplier family is built
/// from them.
std::vector<double> gegenbauer_ratio_all(int K, double lambda, double x);

// Hard cap on polynomial degrees accepted anywhere in the library.
inline constexpr int kMaxGegenbauerDegree = 100000;

} // namespace sphmult
