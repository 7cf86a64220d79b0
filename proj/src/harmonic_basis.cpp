#include "sphmult/harmonic_basis.hpp"

#include <cmath>
#include <stdexcept>

#include "sphmult/specialfns.hpp"
#include "sphmult/summation.hpp"

namespace sphmult {

double CoeffTable::block_norm_squared(int k) const {
    NeumaierSum acc;
    for (int j = 0; j <= 2 * k; ++j) acc.add(at(k, j) * at(k, j));
    return acc.value();
}

void normalized_assoc_legendre(int K, double ct, double st, std::vector<double>& out) {
    const auto tri = [](int k, int mu) {
        return static_cast<std::size_t>(k) * (k + 1) / 2 + mu;
    };
    out.assign(tri(K, K) + 1, 0.0);
    out[tri(0, 0)] = 1.0;
    // diagonal: P~_mu^mu, then first off-diagonal, then three-term downward in k
    for (int mu = 1; mu <= K; ++mu)
        out[tri(mu, mu)] = st * std::sqrt((2.0 * mu + 1.0) / (2.0 * mu)) * out[tri(mu - 1, mu - 1)];
    for (int mu = 0; mu < K; ++mu)
        out[tri(mu + 1, mu)] = std::sqrt(2.0 * mu + 3.0) * ct * out[tri(mu, mu)];
    for (int mu = 0; mu <= K; ++mu) {
        for (int k = mu + 2; k <= K; ++k) {
            const double k2 = static_cast<double>(k) * k;
            const double mu2 = static_cast<double>(mu) * mu;
            const double alpha = std::sqrt((4.0 * k2 - 1.0) / (k2 - mu2));
            const double beta = std::sqrt(((2.0 * k + 1.0) / (2.0 * k - 3.0)) *
                                          (((k - 1.0) * (k - 1.0) - mu2) / (k2 - mu2)));
            out[tri(k, mu)] = alpha * ct * out[tri(k - 1, mu)] - beta * out[tri(k - 2, mu)];
        }
    }
}

HarmonicBasis::HarmonicBasis(SphereGrid grid, int K) : grid_(std::move(grid)), K_(K) {
    if (K < 0) throw std::domain_error("HarmonicBasis: K must be >= 0");
    if (grid_.exact_degree < 2 * K)
        throw std::domain_error("HarmonicBasis: grid exactness below 2K");
    build_tables();
}

void HarmonicBasis::build_tables() {
    const double sqrt2 = std::sqrt(2.0);
    plm_.resize(grid_.n_theta);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < grid_.n_theta; ++i) {
        normalized_assoc_legendre(K_, grid_.cos_theta[i], grid_.sin_theta[i], plm_[i]);
        for (int k = 0; k <= K_; ++k)
            for (int mu = 1; mu <= k; ++mu) plm_[i][tri(k, mu)] *= sqrt2;
    }
    cosmu_.assign(grid_.n_phi, std::vector<double>(static_cast<std::size_t>(K_) + 1));
    sinmu_.assign(grid_.n_phi, std::vector<double>(static_cast<std::size_t>(K_) + 1));
    for (int q = 0; q < grid_.n_phi; ++q) {
        const double phi = grid_.phi(q);
        for (int mu = 0; mu <= K_; ++mu) {
            cosmu_[q][mu] = std::cos(mu * phi);
            sinmu_[q][mu] = std::sin(mu * phi);
        }
    }
    for (int k = 0; k <= K_; ++k)
        for (int mu = 0; mu <= k; ++mu) {
            pair_k_.push_back(k);
            pair_mu_.push_back(mu);
        }
}

CoeffTable HarmonicBasis::forward(std::span<const double> values) const {
    if (values.size() != grid_.size())
        throw std::invalid_argument("forward: value count does not match the grid");
    const int nt = grid_.n_theta, np = grid_.n_phi;
    // stage 1: longitude sums per colatitude and order
    std::vector<double> fc(static_cast<std::size_t>(nt) * (K_ + 1));
    std::vector<double> fs(static_cast<std::size_t>(nt) * (K_ + 1));
#pragma omp parallel for schedule(static)
    for (int i = 0; i < nt; ++i) {
        const double* row = values.data() + static_cast<std::size_t>(i) * np;
        for (int mu = 0; mu <= K_; ++mu) {
            NeumaierSum ac, as;
            for (int q = 0; q < np; ++q) {
                ac.add(row[q] * cosmu_[q][mu]);
                as.add(row[q] * sinmu_[q][mu]);
            }
            fc[static_cast<std::size_t>(i) * (K_ + 1) + mu] = ac.value();
            fs[static_cast<std::size_t>(i) * (K_ + 1) + mu] = as.value();
        }
    }
    // stage 2: colatitude quadrature against the Legendre tables.
    // (1/omega_2) w_theta phi_weight = w_theta / (2 n_phi)
    const double norm = 1.0 / (2.0 * np);
    CoeffTable out(K_);
    const int n_pairs = (K_ + 1) * (K_ + 2) / 2;
#pragma omp parallel for schedule(static)
    for (int flat = 0; flat < n_pairs; ++flat) {
        const int k = pair_k_[flat];
        const int mu = pair_mu_[flat];
        NeumaierSum ac, as;
        for (int i = 0; i < nt; ++i) {
            const double b = grid_.theta_weight[i] * plm_[i][tri(k, mu)];
            ac.add(b * fc[static_cast<std::size_t>(i) * (K_ + 1) + mu]);
            if (mu > 0) as.add(b * fs[static_cast<std::size_t>(i) * (K_ + 1) + mu]);
        }
        if (mu == 0) {
            out.at(k, 0) = norm * ac.value();
        } else {
            out.at(k, 2 * mu - 1) = norm * ac.value();
            out.at(k, 2 * mu) = norm * as.value();
        }
    }
    return out;
}

std::vector<double> HarmonicBasis::synthesize(const CoeffTable& coeffs) const {
    if (coeffs.K != K_)
        throw std::invalid_argument("synthesize: coefficient band limit does not match basis");
    const int nt = grid_.n_theta, np = grid_.n_phi;
    std::vector<double> out(grid_.size());
#pragma omp parallel for schedule(static)
    for (int i = 0; i < nt; ++i) {
        // collapse degrees first: G_c(mu), G_s(mu) at this colatitude
        std::vector<double> gc(static_cast<std::size_t>(K_) + 1, 0.0);
        std::vector<double> gs(static_cast<std::size_t>(K_) + 1, 0.0);
        for (int mu = 0; mu <= K_; ++mu) {
            NeumaierSum ac, as;
            for (int k = mu; k <= K_; ++k) {
                const double p = plm_[i][tri(k, mu)];
                if (mu == 0) {
                    ac.add(coeffs.at(k, 0) * p);
                } else {
                    ac.add(coeffs.at(k, 2 * mu - 1) * p);
                    as.add(coeffs.at(k, 2 * mu) * p);
                }
            }
            gc[mu] = ac.value();
            gs[mu] = as.value();
        }
        double* row = out.data() + static_cast<std::size_t>(i) * np;
        for (int q = 0; q < np; ++q) {
            NeumaierSum acc;
            acc.add(gc[0]);
            for (int mu = 1; mu <= K_; ++mu)
                acc.add(gc[mu] * cosmu_[q][mu] + gs[mu] * sinmu_[q][mu]);
            row[q] = acc.value();
        }
    }
    return out;
}

void HarmonicBasis::node_basis(int i, int q, std::vector<double>& out) const {
    out.assign(static_cast<std::size_t>(K_ + 1) * (K_ + 1), 0.0);
    for (int k = 0; k <= K_; ++k) {
        out[CoeffTable::offset(k)] = plm_[i][tri(k, 0)];
        for (int mu = 1; mu <= k; ++mu) {
            const double b = plm_[i][tri(k, mu)];  // sqrt(2) already folded in
            out[CoeffTable::offset(k) + 2 * mu - 1] = b * cosmu_[q][mu];
            out[CoeffTable::offset(k) + 2 * mu] = b * sinmu_[q][mu];
        }
    }
}

double HarmonicBasis::basis_value(int k, int j, double ct, double phi) const {
    if (k < 0 || k > K_ || j < 0 || j > 2 * k)
        throw std::domain_error("basis_value: (k, j) outside the table");
    std::vector<double> col;
    normalized_assoc_legendre(k, ct, std::sqrt(std::max(0.0, 1.0 - ct * ct)), col);
    if (j == 0) return col[tri(k, 0)];
    const int mu = (j + 1) / 2;
    const double p = std::sqrt(2.0) * col[tri(k, mu)];
    return (j % 2 == 1) ? p * std::cos(mu * phi) : p * std::sin(mu * phi);
}

} // namespace sphmult
