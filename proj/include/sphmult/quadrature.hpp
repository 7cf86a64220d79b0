#pragma once

// Gauss-Legendre rules on [-1,1] with an internally synchronized cache,
// profile integrals over [a,b], the zonal reduction of S^m integrals, and
// the full product grid on S^2.

#include <cstddef>
#include <functional>
#include <vector>

namespace sphmult {

struct Rule1D {
    int n = 0;
    std::vector<double> nodes;    // strictly increasing, symmetric about 0
    std::vector<double> weights;  // positive, sum = 2
};

/// Cached Gauss-Legendre rule, 1 <= n <= 4096. Nodes by Newton iteration on
/// the Legendre recurrence, tolerance 1e-15. First call per n builds the
/// rule; later calls return the cached copy (thread-safe).
const Rule1D& gauss_legendre(int n);

/// Gauss-Legendre integral of g over [a,b] with n nodes. A NaN value of g is
/// reported, not propagated silently.
double integrate_profile(const std::function<double(double)>& g, double a, double b, int n);

/// Normalized integral over S^m of the zonal function u -> profile(u):
///   (omega_{m-1}/omega_m) * Int_{-1}^{1} profile(u) (1-u^2)^{(m-2)/2} du.
/// Evaluated in the colatitude variable (u = cos h) where the integrand is a
/// trigonometric polynomial whenever profile is polynomial, so plain
/// Gauss-Legendre converges superexponentially.
double zonal_integral(const std::function<double(double)>& profile, int m, int n);

// Product quadrature grid on S^2: Gauss-Legendre in cos(theta), uniform
// longitudes. Node (i,q) has weight theta_weight[i] * phi_weight and
// coordinates (theta_i, phi_q = q * 2 pi / n_phi). Integrates every
// spherical polynomial of degree <= exact_degree exactly.
struct SphereGrid {
    int n_theta = 0;
    int n_phi = 0;
    int exact_degree = 0;
    std::vector<double> cos_theta;     // GL nodes, increasing
    std::vector<double> sin_theta;
    std::vector<double> theta_weight;  // GL weights (sum = 2)
    double phi_weight = 0.0;           // 2 pi / n_phi

    std::size_t size() const { return static_cast<std::size_t>(n_theta) * n_phi; }
    double phi(int q) const;
    double node_weight(int i, int q) const { (void)q; return theta_weight[i] * phi_weight; }
    double total_weight() const;
};

/// Grid exact for all products of degree <= K harmonics (exact_degree >= 2K).
/// Defaults: n_theta = K+2, n_phi = 2K+2; pass explicit sizes to oversample.
SphereGrid sphere_grid(int K);
SphereGrid sphere_grid(int K, int n_theta, int n_phi);

} // namespace sphmult
