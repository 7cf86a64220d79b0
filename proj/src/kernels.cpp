#include "sphmult/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "sphmult/multipliers.hpp"
#include "sphmult/quadrature.hpp"
#include "sphmult/specialfns.hpp"
#include "sphmult/summation.hpp"

namespace sphmult {

namespace {

constexpr std::size_t kMaxCoefficients = 50'000'000;  // desk-scale guard

void check_band(int m, int K) {
    if (m < 2) throw std::domain_error("kernel: m must be >= 2");
    if (K < 0) throw std::domain_error("kernel: band limit must be >= 0");
}

} // namespace

CoefficientKernel CoefficientKernel::make(int m, std::vector<std::vector<double>> blocks) {
    check_band(m, static_cast<int>(blocks.size()) - 1);
    if (blocks.empty()) throw std::domain_error("kernel: need at least the degree-0 block");
    std::size_t total = 0;
    for (int k = 0; k < static_cast<int>(blocks.size()); ++k) {
        const std::uint64_t want = harmonic_dim(k, m);
        if (blocks[k].size() != want) {
            std::ostringstream oss;
            oss << "kernel: block " << k << " has " << blocks[k].size() << " entries, expected d_"
                << k << "^" << m << " = " << want;
            throw std::invalid_argument(oss.str());
        }
        for (double a : blocks[k])
            if (!(a >= 0.0))
                throw std::invalid_argument("kernel: coefficients must be nonnegative");
        std::sort(blocks[k].begin(), blocks[k].end(), std::greater<double>());
        total += blocks[k].size();
        if (total > kMaxCoefficients)
            throw std::length_error("kernel: coefficient count exceeds desk scale");
    }
    CoefficientKernel kern;
    kern.m_ = m;
    kern.K_ = static_cast<int>(blocks.size()) - 1;
    kern.blocks_ = std::move(blocks);
    return kern;
}

double CoefficientKernel::block_sum(int k) const {
    NeumaierSum acc;
    for (double a : blocks_[k]) acc.add(a);
    return acc.value();
}

double CoefficientKernel::block_sum_squares(int k) const {
    NeumaierSum acc;
    for (double a : blocks_[k]) acc.add(a * a);
    return acc.value();
}

CoefficientKernel CoefficientKernel::sqrt_kernel() const {
    CoefficientKernel out = *this;
    for (auto& block : out.blocks_)
        for (double& a : block) a = std::sqrt(a);
    return out;
}

ZonalKernel ZonalKernel::make(int m, std::vector<double> a) {
    check_band(m, static_cast<int>(a.size()) - 1);
    if (a.empty()) throw std::domain_error("kernel: need at least the degree-0 coefficient");
    for (double v : a)
        if (!(v >= 0.0)) throw std::invalid_argument("kernel: coefficients must be nonnegative");
    ZonalKernel kern;
    kern.m_ = m;
    kern.K_ = static_cast<int>(a.size()) - 1;
    kern.a_ = std::move(a);
    return kern;
}

ZonalKernel ZonalKernel::sqrt_kernel() const {
    ZonalKernel out = *this;
    for (double& v : out.a_) v = std::sqrt(v);
    return out;
}

CoefficientKernel ZonalKernel::to_full() const {
    std::vector<std::vector<double>> blocks(static_cast<std::size_t>(K_) + 1);
    for (int k = 0; k <= K_; ++k)
        blocks[k].assign(harmonic_dim(k, m_), a_[k]);
    return CoefficientKernel::make(m_, std::move(blocks));
}

ZonalKernel power_law_zonal(int m, int K_max, double gamma) {
    check_band(m, K_max);
    if (!(gamma > m))
        std::cerr << "power_law_zonal: gamma = " << gamma << " <= m = " << m
                  << "; the infinite-band trace would diverge\n";
    std::vector<double> a(static_cast<std::size_t>(K_max) + 1);
    for (int k = 0; k <= K_max; ++k) a[k] = std::pow(1.0 + k, -gamma);
    return ZonalKernel::make(m, std::move(a));
}

double synthesize_zonal(const ZonalKernel& kern, double u) {
    if (std::abs(u) > 1.0 + 1e-12)
        throw std::domain_error("synthesize_zonal: |u| must be <= 1");
    u = std::clamp(u, -1.0, 1.0);
    const int K = kern.band_limit();
    const std::vector<double> r = gegenbauer_ratio_all(K, 0.5 * (kern.sphere_dim() - 1), u);
    NeumaierSum acc;
    for (int k = 0; k <= K; ++k)
        acc.add(kern.a(k) * static_cast<double>(harmonic_dim(k, kern.sphere_dim())) * r[k]);
    return acc.value();
}

std::vector<std::vector<double>> apply_multiplier_section(const CoefficientKernel& kern,
                                                          const MultiplierFamily& family,
                                                          double t) {
    const std::vector<double> eta = family.eval(kern.band_limit(), t);
    std::vector<std::vector<double>> out = kern.blocks();
    for (int k = 0; k <= kern.band_limit(); ++k)
        for (double& a : out[k]) a *= eta[k];
    return out;
}

std::vector<double> apply_multiplier_section(const ZonalKernel& kern,
                                             const MultiplierFamily& family, double t) {
    const std::vector<double> eta = family.eval(kern.band_limit(), t);
    std::vector<double> out = kern.a();
    for (int k = 0; k <= kern.band_limit(); ++k) out[k] *= eta[k];
    return out;
}

std::vector<std::vector<double>> operator_apply(
    const CoefficientKernel& kern, const std::vector<std::vector<double>>& f_coeffs) {
    if (f_coeffs.size() != kern.blocks().size())
        throw std::invalid_argument("operator_apply: band limit mismatch");
    std::vector<std::vector<double>> out = f_coeffs;
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (out[k].size() != kern.block(static_cast<int>(k)).size())
            throw std::invalid_argument("operator_apply: block shape mismatch");
        for (std::size_t j = 0; j < out[k].size(); ++j)
            out[k][j] *= kern.block(static_cast<int>(k))[j];
    }
    return out;
}

namespace {

EigenvalueSequence sort_multiset(std::vector<double>&& vals,
                                 std::vector<std::pair<int, int>>&& prov) {
    std::vector<std::size_t> order(vals.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (vals[a] != vals[b]) return vals[a] > vals[b];
        return prov[a] < prov[b];
    });
    EigenvalueSequence seq;
    seq.lambdas.reserve(vals.size());
    seq.provenance.reserve(vals.size());
    for (std::size_t idx : order) {
        seq.lambdas.push_back(vals[idx]);
        seq.provenance.push_back(prov[idx]);
    }
    return seq;
}

} // namespace

EigenvalueSequence eigenvalue_sequence(const CoefficientKernel& kern) {
    std::vector<double> vals;
    std::vector<std::pair<int, int>> prov;
    for (int k = 0; k <= kern.band_limit(); ++k)
        for (std::size_t j = 0; j < kern.block(k).size(); ++j) {
            vals.push_back(kern.block(k)[j]);
            prov.emplace_back(k, static_cast<int>(j) + 1);
        }
    return sort_multiset(std::move(vals), std::move(prov));
}

EigenvalueSequence eigenvalue_sequence(const ZonalKernel& kern) {
    std::vector<double> vals;
    std::vector<std::pair<int, int>> prov;
    const std::size_t total = cumulative_dim(kern.band_limit(), kern.sphere_dim());
    if (total > kMaxCoefficients)
        throw std::length_error("eigenvalue_sequence: multiset exceeds desk scale");
    vals.reserve(total);
    prov.reserve(total);
    for (int k = 0; k <= kern.band_limit(); ++k) {
        const std::uint64_t d = harmonic_dim(k, kern.sphere_dim());
        for (std::uint64_t j = 1; j <= d; ++j) {
            vals.push_back(kern.a(k));
            prov.emplace_back(k, static_cast<int>(j));
        }
    }
    return sort_multiset(std::move(vals), std::move(prov));
}

bool is_degreewise_dominated(const CoefficientKernel& kern) {
    // blocks are sorted, so compare each block's max against the previous min
    double prev_min = kern.block(0).empty() ? 0.0 : kern.block(0).back();
    for (int k = 1; k <= kern.band_limit(); ++k) {
        if (kern.block(k).empty()) continue;
        if (kern.block(k).front() > prev_min) return false;
        prev_min = std::min(prev_min, kern.block(k).back());
    }
    return true;
}

bool is_degreewise_dominated(const ZonalKernel& kern) {
    for (int k = 1; k <= kern.band_limit(); ++k)
        if (kern.a(k) > kern.a(k - 1)) return false;
    return true;
}

ReproducingReport reproducing_check(const ZonalKernel& kern, const SphereGrid& grid) {
    if (kern.sphere_dim() != 2)
        throw std::domain_error("reproducing_check: grid route requires m = 2");
    if (grid.exact_degree < 2 * kern.band_limit())
        throw std::domain_error("reproducing_check: grid exactness below 2 K_max");
    const ZonalKernel half = kern.sqrt_kernel();
    ReproducingReport rep;
    // w at the pole, y at separation gamma; the x-integral runs over the grid.
    const int n_gamma = 17;
    for (int g = 0; g < n_gamma; ++g) {
        const double gamma = M_PI * g / (n_gamma - 1.0);
        const double cg = std::cos(gamma), sg = std::sin(gamma);
        NeumaierSum acc;
        for (int i = 0; i < grid.n_theta; ++i) {
            const double ct = grid.cos_theta[i], st = grid.sin_theta[i];
            const double w_half = synthesize_zonal(half, ct);  // K_half(w, x), w = pole
            for (int q = 0; q < grid.n_phi; ++q) {
                const double xy = cg * ct + sg * st * std::cos(grid.phi(q));
                acc.add(grid.node_weight(i, q) * w_half *
                        synthesize_zonal(half, std::clamp(xy, -1.0, 1.0)));
            }
        }
        const double lhs = acc.value() / surface_area(2);
        const double rhs = synthesize_zonal(kern, cg);
        rep.max_residual = std::max(rep.max_residual, std::abs(lhs - rhs));
        ++rep.samples;
    }
    return rep;
}

ReproducingReport reproducing_check(const ZonalKernel& kern, int n_quad, int n_separations) {
    const int m = kern.sphere_dim();
    const ZonalKernel half = kern.sqrt_kernel();
    const Rule1D& rule = gauss_legendre(n_quad);
    ReproducingReport rep;
    // (1/omega_m) Int_{S^m} F(x.y) G(w.x) dsigma(x) with y at the pole and w
    // at separation gamma collapses to a (theta, phi) double integral: the
    // remaining S^{m-2} factor contributes omega_{m-2} (a 2 pi circle for
    // m = 2, where the azimuth runs the full [0, 2 pi)).
    const double front = (m == 2) ? 1.0 / surface_area(2) : surface_area(m - 2) / surface_area(m);
    const double phi_hi = (m == 2) ? 2.0 * M_PI : M_PI;
    for (int g = 0; g < n_separations; ++g) {
        const double gamma = M_PI * g / (n_separations - 1.0);
        const double cg = std::cos(gamma), sg = std::sin(gamma);
        NeumaierSum acc;
        for (int i = 0; i < rule.n; ++i) {
            const double theta = 0.5 * M_PI * (rule.nodes[i] + 1.0);
            const double wt = 0.5 * M_PI * rule.weights[i];
            const double ct = std::cos(theta), st = std::sin(theta);
            const double f_val = synthesize_zonal(half, ct);
            NeumaierSum inner;
            for (int q = 0; q < rule.n; ++q) {
                const double phi = 0.5 * phi_hi * (rule.nodes[q] + 1.0);
                const double wq = 0.5 * phi_hi * rule.weights[q];
                const double wx = cg * ct + sg * st * std::cos(phi);
                double v = synthesize_zonal(half, std::clamp(wx, -1.0, 1.0));
                if (m > 2) v *= std::pow(std::sin(phi), m - 2.0);
                inner.add(wq * v);
            }
            acc.add(wt * std::pow(st, m - 1.0) * f_val * inner.value());
        }
        const double lhs = front * acc.value();
        const double rhs = synthesize_zonal(kern, cg);
        rep.max_residual = std::max(rep.max_residual, std::abs(lhs - rhs));
        ++rep.samples;
    }
    return rep;
}

// --- kernel file I/O ---------------------------------------------------------

int KernelFile::sphere_dim() const {
    return zonal ? zonal_kernel.sphere_dim() : full_kernel.sphere_dim();
}
int KernelFile::band_limit() const {
    return zonal ? zonal_kernel.band_limit() : full_kernel.band_limit();
}

std::string write_kernel_json(const ZonalKernel& kern) {
    nlohmann::json j;
    j["version"] = 1;
    j["m"] = kern.sphere_dim();
    j["k_max"] = kern.band_limit();
    j["zonal"] = true;
    j["a"] = kern.a();
    return j.dump(2) + "\n";
}

std::string write_kernel_json(const CoefficientKernel& kern) {
    nlohmann::json j;
    j["version"] = 1;
    j["m"] = kern.sphere_dim();
    j["k_max"] = kern.band_limit();
    j["zonal"] = false;
    j["blocks"] = kern.blocks();
    return j.dump(2) + "\n";
}

KernelFile read_kernel_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("version") || j["version"].get<int>() != 1)
        throw std::invalid_argument("kernel file: unsupported or missing version");
    KernelFile file;
    const int m = j.at("m").get<int>();
    const int k_max = j.at("k_max").get<int>();
    file.zonal = j.at("zonal").get<bool>();
    if (file.zonal) {
        auto a = j.at("a").get<std::vector<double>>();
        if (static_cast<int>(a.size()) != k_max + 1)
            throw std::invalid_argument("kernel file: 'a' length does not match k_max");
        file.zonal_kernel = ZonalKernel::make(m, std::move(a));
    } else {
        auto blocks = j.at("blocks").get<std::vector<std::vector<double>>>();
        if (static_cast<int>(blocks.size()) != k_max + 1)
            throw std::invalid_argument("kernel file: block count does not match k_max");
        file.full_kernel = CoefficientKernel::make(m, std::move(blocks));
    }
    return file;
}

KernelFile load_kernel_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("kernel file: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return read_kernel_json(buf.str());
}

} // namespace sphmult
