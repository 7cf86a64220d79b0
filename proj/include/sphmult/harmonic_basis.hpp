#pragma once

// Real orthonormal spherical harmonics on S^2 under the normalized inner
// product <f,g> = (1/omega_2) Int f g dsigma, tabulated on a product grid,
// with forward analysis and synthesis. The transform kernels are
// OpenMP-parallel over independent outputs, so results are bit-identical for
// any thread count; reference.hpp holds the serial naive versions used to
// test them.

#include <span>
#include <vector>

#include "sphmult/quadrature.hpp"

namespace sphmult {

// Coefficients of a band-limited function, degrees 0..K. Block k starts at
// offset k^2 and holds 2k+1 entries ordered
//   j = 0          -> order 0,
//   j = 2 mu - 1   -> order mu, cosine component,
//   j = 2 mu       -> order mu, sine component.
struct CoeffTable {
    int K = -1;
    std::vector<double> v;

    CoeffTable() = default;
    explicit CoeffTable(int band) : K(band), v(static_cast<std::size_t>(band + 1) * (band + 1)) {}

    static std::size_t offset(int k) { return static_cast<std::size_t>(k) * k; }
    double& at(int k, int j) { return v[offset(k) + j]; }
    double at(int k, int j) const { return v[offset(k) + j]; }
    std::size_t size() const { return v.size(); }

    /// sum_j f_hat(k,j)^2
    double block_norm_squared(int k) const;
};

class HarmonicBasis {
public:
    HarmonicBasis(SphereGrid grid, int K);

    int band_limit() const { return K_; }
    const SphereGrid& grid() const { return grid_; }

    /// f_hat(k,j) = (1/omega_2) sum_nodes w f Y_{k,j}; exact for band-limited f.
    CoeffTable forward(std::span<const double> values) const;

    /// Values of sum f_hat(k,j) Y_{k,j} at the grid nodes.
    std::vector<double> synthesize(const CoeffTable& coeffs) const;

    /// Y_{k,j} at an arbitrary point (slow path; used for spot checks).
    double basis_value(int k, int j, double cos_theta, double phi) const;

    /// All (K+1)^2 basis values at grid node (i,q), CoeffTable layout.
    void node_basis(int i, int q, std::vector<double>& out) const;

    /// Normalized associated Legendre value tables: p(i, idx(k,mu)) with the
    /// sqrt(2) real-basis factor folded in for mu >= 1.
    double p_table(int i, int k, int mu) const { return plm_[i][tri(k, mu)]; }

private:
    static std::size_t tri(int k, int mu) {
        return static_cast<std::size_t>(k) * (k + 1) / 2 + mu;
    }
    void build_tables();

    SphereGrid grid_;
    int K_;
    std::vector<std::vector<double>> plm_;    // [n_theta][tri(K+1)]
    std::vector<std::vector<double>> cosmu_;  // [n_phi][K+1]
    std::vector<std::vector<double>> sinmu_;
    std::vector<int> pair_k_, pair_mu_;       // flat (k,mu) enumeration
};

/// Normalized associated Legendre column for one colatitude: out[tri(k,mu)]
/// holds sqrt((2k+1)(k-mu)!/(k+mu)!) P_k^mu(cos_theta), without
/// Condon-Shortley phase, for k <= K. Stable to high degree.
void normalized_assoc_legendre(int K, double cos_theta, double sin_theta,
                               std::vector<double>& out);

} // namespace sphmult
