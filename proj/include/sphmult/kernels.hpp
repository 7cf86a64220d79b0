#pragma once

// Coefficient-space model of L^2-positive-definite kernels on S^m:
//   K(x,y) = sum_k sum_j a_{k,j} Y_{k,j}(x) Y_{k,j}(y),  a_{k,j} >= 0,
// band-limited to K_max. Kernels are immutable value objects; spatial values
// are synthesized on demand.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace sphmult {

class MultiplierFamily;
struct SphereGrid;

class CoefficientKernel {
public:
    /// Validates shape (block k holds exactly d_k^m entries) and positivity,
    /// then sorts each block nonincreasing (an orthonormal-basis relabeling).
    static CoefficientKernel make(int m, std::vector<std::vector<double>> blocks);

    int sphere_dim() const { return m_; }
    int band_limit() const { return K_; }
    const std::vector<std::vector<double>>& blocks() const { return blocks_; }
    const std::vector<double>& block(int k) const { return blocks_[k]; }

    /// sum_j a_{k,j}
    double block_sum(int k) const;
    /// sum_j a_{k,j}^2
    double block_sum_squares(int k) const;

    CoefficientKernel sqrt_kernel() const;

private:
    CoefficientKernel() = default;
    int m_ = 2;
    int K_ = 0;
    std::vector<std::vector<double>> blocks_;
};

class ZonalKernel {
public:
    static ZonalKernel make(int m, std::vector<double> a);

    int sphere_dim() const { return m_; }
    int band_limit() const { return K_; }
    const std::vector<double>& a() const { return a_; }
    double a(int k) const { return a_[k]; }

    ZonalKernel sqrt_kernel() const;
    /// Expands a_{k,j} = a_k into explicit per-degree blocks.
    CoefficientKernel to_full() const;

private:
    ZonalKernel() = default;
    int m_ = 2;
    int K_ = 0;
    std::vector<double> a_;
};

/// Test-kernel generator: a_k = (1+k)^{-gamma}. gamma <= m only warns on
/// stderr (band-limited kernels stay finite either way).
ZonalKernel power_law_zonal(int m, int K_max, double gamma);

/// K(x,y) at inner product u = x.y:
///   sum_k a_k d_k^m C_k^{(m-1)/2}(u) / C_k^{(m-1)/2}(1).
double synthesize_zonal(const ZonalKernel& kern, double u);

/// Multiplies every degree-k coefficient by eta_k^t.
std::vector<std::vector<double>> apply_multiplier_section(const CoefficientKernel& kern,
                                                          const MultiplierFamily& family,
                                                          double t);
std::vector<double> apply_multiplier_section(const ZonalKernel& kern,
                                             const MultiplierFamily& family, double t);

/// Diagonal action of the integral operator: (a_{k,j} f_hat(k,j)).
std::vector<std::vector<double>> operator_apply(const CoefficientKernel& kern,
                                                const std::vector<std::vector<double>>& f_coeffs);

struct EigenvalueSequence {
    std::vector<double> lambdas;                      // nonincreasing
    std::vector<std::pair<int, int>> provenance;      // originating (k, j), j 1-based
};

/// Decreasing rearrangement of the coefficient multiset; ties broken by
/// (k, j) lexicographic order.
EigenvalueSequence eigenvalue_sequence(const CoefficientKernel& kern);
EigenvalueSequence eigenvalue_sequence(const ZonalKernel& kern);

/// True when no later-degree coefficient exceeds an earlier-degree one.
bool is_degreewise_dominated(const CoefficientKernel& kern);
bool is_degreewise_dominated(const ZonalKernel& kern);

struct ReproducingReport {
    double max_residual = 0.0;
    int samples = 0;
};

/// Checks (1/omega_m) Int K_{1/2}(x,y) K_{1/2}(w,x) dsigma(x) = K(w,y) by
/// honest quadrature of the left side at sampled (w,y) separations.
/// Grid route: m = 2, integral over the full product grid.
ReproducingReport reproducing_check(const ZonalKernel& kern, const SphereGrid& grid);
/// Two-angle reduction route, any m >= 2: the x-integral collapses to a
/// colatitude-azimuth double integral with n_quad points per axis.
ReproducingReport reproducing_check(const ZonalKernel& kern, int n_quad, int n_separations = 17);

// Kernel file format: versioned JSON document
//   {"version": 1, "m": ..., "k_max": ..., "zonal": bool, "a": [...] | "blocks": [[...]]}
// with round-trip-exact decimal coefficients.
struct KernelFile {
    bool zonal = true;
    ZonalKernel zonal_kernel;
    CoefficientKernel full_kernel;
    int sphere_dim() const;
    int band_limit() const;
};

std::string write_kernel_json(const ZonalKernel& kern);
std::string write_kernel_json(const CoefficientKernel& kern);
KernelFile read_kernel_json(const std::string& text);
KernelFile load_kernel_file(const std::string& path);

} // namespace sphmult
