#include "sphmult/reference.hpp"

#include <cmath>
#include <stdexcept>

#include "sphmult/specialfns.hpp"

namespace sphmult::reference {

namespace {

// All 2k+1 basis values at one node, recomputed from scratch.
void basis_row(int K, double ct, double st, double phi, std::vector<double>& y) {
    std::vector<double> p;
    normalized_assoc_legendre(K, ct, st, p);
    const auto tri = [](int k, int mu) {
        return static_cast<std::size_t>(k) * (k + 1) / 2 + mu;
    };
    y.assign(static_cast<std::size_t>(K + 1) * (K + 1), 0.0);
    const double sqrt2 = std::sqrt(2.0);
    for (int k = 0; k <= K; ++k) {
        y[CoeffTable::offset(k)] = p[tri(k, 0)];
        for (int mu = 1; mu <= k; ++mu) {
            const double b = sqrt2 * p[tri(k, mu)];
            y[CoeffTable::offset(k) + 2 * mu - 1] = b * std::cos(mu * phi);
            y[CoeffTable::offset(k) + 2 * mu] = b * std::sin(mu * phi);
        }
    }
}

} // namespace

CoeffTable forward(const SphereGrid& grid, int K, std::span<const double> values) {
    if (values.size() != grid.size())
        throw std::invalid_argument("reference::forward: value count does not match the grid");
    CoeffTable out(K);
    const double inv_omega = 1.0 / (4.0 * M_PI);
    std::vector<double> y;
    for (int i = 0; i < grid.n_theta; ++i) {
        for (int q = 0; q < grid.n_phi; ++q) {
            const double f = values[static_cast<std::size_t>(i) * grid.n_phi + q];
            const double w = grid.node_weight(i, q) * inv_omega;
            basis_row(K, grid.cos_theta[i], grid.sin_theta[i], grid.phi(q), y);
            for (std::size_t idx = 0; idx < out.v.size(); ++idx) out.v[idx] += w * f * y[idx];
        }
    }
    return out;
}

std::vector<double> synthesize(const SphereGrid& grid, const CoeffTable& coeffs) {
    std::vector<double> out(grid.size(), 0.0);
    std::vector<double> y;
    for (int i = 0; i < grid.n_theta; ++i) {
        for (int q = 0; q < grid.n_phi; ++q) {
            basis_row(coeffs.K, grid.cos_theta[i], grid.sin_theta[i], grid.phi(q), y);
            double v = 0.0;
            for (std::size_t idx = 0; idx < coeffs.v.size(); ++idx) v += coeffs.v[idx] * y[idx];
            out[static_cast<std::size_t>(i) * grid.n_phi + q] = v;
        }
    }
    return out;
}

double synthesize_zonal_direct(int m, std::span<const double> a, double u) {
    const double lambda = 0.5 * (m - 1);
    double total = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const int ki = static_cast<int>(k);
        total += a[k] * static_cast<double>(harmonic_dim(ki, m)) *
                 gegenbauer_eval(ki, lambda, u) / gegenbauer_at_one(ki, lambda);
    }
    return total;
}

} // namespace sphmult::reference
