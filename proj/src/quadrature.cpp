#include "sphmult/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "sphmult/specialfns.hpp"
#include "sphmult/summation.hpp"

namespace sphmult {

namespace {

// Legendre P_n and its derivative at x, for the Newton solve.
void legendre_pair(int n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
}

Rule1D build_gauss_legendre(int n) {
    Rule1D rule;
    rule.n = n;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    if (n == 1) {
        rule.nodes[0] = 0.0;
        rule.weights[0] = 2.0;
        return rule;
    }
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-based initial guess for the i-th positive-side root.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p = 0.0, dp = 1.0;
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            legendre_pair(n, x, p, dp);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) <= 1e-15) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw std::runtime_error("gauss_legendre: Newton iteration failed to converge");
        legendre_pair(n, x, p, dp);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Mirror for exact symmetry; x decreases with i on this half.
        rule.nodes[n - 1 - i] = x;
        rule.nodes[i] = -x;
        rule.weights[n - 1 - i] = w;
        rule.weights[i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

} // namespace

const Rule1D& gauss_legendre(int n) {
    if (n < 1 || n > 4096)
        throw std::domain_error("gauss_legendre: n must be in [1, 4096]");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<Rule1D>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::make_unique<Rule1D>(build_gauss_legendre(n))).first;
    return *it->second;
}

double integrate_profile(const std::function<double(double)>& g, double a, double b, int n) {
    if (!(a < b)) throw std::domain_error("integrate_profile: need a < b");
    const Rule1D& rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    NeumaierSum acc;
    for (int i = 0; i < rule.n; ++i) {
        const double x = mid + hw * rule.nodes[i];
        const double v = g(x);
        if (std::isnan(v)) {
            std::ostringstream oss;
            oss << "integrate_profile: integrand returned NaN at node " << x;
            throw std::runtime_error(oss.str());
        }
        acc.add(hw * rule.weights[i] * v);
    }
    return acc.value();
}

double zonal_integral(const std::function<double(double)>& profile, int m, int n) {
    if (m < 2) throw std::domain_error("zonal_integral: m must be >= 2");
    const double ratio = surface_area(m - 1) / surface_area(m);
    const double em = m - 1.0;
    return ratio * integrate_profile(
                       [&](double h) { return profile(std::cos(h)) * std::pow(std::sin(h), em); },
                       0.0, M_PI, n);
}

double SphereGrid::phi(int q) const { return q * (2.0 * M_PI / n_phi); }

double SphereGrid::total_weight() const {
    NeumaierSum acc;
    for (int i = 0; i < n_theta; ++i)
        for (int q = 0; q < n_phi; ++q) acc.add(node_weight(i, q));
    return acc.value();
}

SphereGrid sphere_grid(int K) { return sphere_grid(K, K + 2, 2 * K + 2); }

SphereGrid sphere_grid(int K, int n_theta, int n_phi) {
    if (K < 0 || K > 256) throw std::domain_error("sphere_grid: K must be in [0, 256]");
    if (n_theta < K + 1 || n_phi < 2 * K + 2)
        throw std::domain_error("sphere_grid: grid too small for requested band limit");
    SphereGrid g;
    g.n_theta = n_theta;
    g.n_phi = n_phi;
    g.exact_degree = std::min(2 * n_theta - 1, n_phi - 1);
    const Rule1D& rule = gauss_legendre(n_theta);
    g.cos_theta = rule.nodes;
    g.theta_weight = rule.weights;
    g.sin_theta.resize(n_theta);
    for (int i = 0; i < n_theta; ++i)
        g.sin_theta[i] = std::sqrt(std::max(0.0, 1.0 - g.cos_theta[i] * g.cos_theta[i]));
    g.phi_weight = 2.0 * M_PI / n_phi;
    return g;
}

} // namespace sphmult
