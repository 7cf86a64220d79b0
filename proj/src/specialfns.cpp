#include "sphmult/specialfns.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sphmult {

namespace {

using u128 = unsigned __int128;

constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();

u128 checked_mul(u128 a, u128 b) {
    if (a != 0 && b > ~u128{0} / a)
        throw std::overflow_error("integer overflow in combinatorial product");
    return a * b;
}

std::uint64_t narrow_u64(u128 v, const char* what) {
    if (v > u128{kU64Max})
        throw std::overflow_error(std::string(what) + ": result exceeds 64-bit range");
    return static_cast<std::uint64_t>(v);
}

// binom(n, j) built multiplicatively; each intermediate division is exact.
u128 binomial_u128(int n, int j) {
    if (j < 0 || j > n) return 0;
    if (j > n - j) j = n - j;
    u128 r = 1;
    for (int i = 1; i <= j; ++i) {
        r = checked_mul(r, static_cast<u128>(n - j + i));
        r /= static_cast<u128>(i);
    }
    return r;
}

} // namespace

double surface_area(int m) {
    if (m < 1) throw std::domain_error("surface_area: m must be >= 1");
    const double a = 0.5 * (m + 1);
    return std::exp(std::log(2.0) + a * std::log(M_PI) - std::lgamma(a));
}

std::uint64_t binomial(int n, int j) {
    return narrow_u64(binomial_u128(n, j), "binomial");
}

std::uint64_t harmonic_dim(int k, int m) {
    if (k < 0) throw std::domain_error("harmonic_dim: k must be >= 0");
    if (m < 2) throw std::domain_error("harmonic_dim: m must be >= 2");
    if (k == 0) return 1;
    // d_k^m = binom(k+m-1, m-1) + binom(k+m-2, m-1)
    const u128 d = binomial_u128(k + m - 1, m - 1) + binomial_u128(k + m - 2, m - 1);
    return narrow_u64(d, "harmonic_dim");
}

std::uint64_t cumulative_dim(int n, int m) {
    if (n < 0) throw std::domain_error("cumulative_dim: n must be >= 0");
    u128 total = 0;
    for (int k = 0; k <= n; ++k) {
        total += u128{harmonic_dim(k, m)};
        if (total > u128{kU64Max})
            throw std::overflow_error("cumulative_dim: result exceeds 64-bit range");
    }
    return static_cast<std::uint64_t>(total);
}

namespace {

double clamp_abscissa(double x) {
    if (std::abs(x) > 1.0 + 1e-12)
        throw std::domain_error("gegenbauer: |x| must be <= 1");
    return x < -1.0 ? -1.0 : (x > 1.0 ? 1.0 : x);
}

void check_degree(int k, double lambda) {
    if (k < 0) throw std::domain_error("gegenbauer: degree must be >= 0");
    if (k > kMaxGegenbauerDegree) throw std::domain_error("gegenbauer: degree too large");
    if (!(lambda > 0.0)) throw std::domain_error("gegenbauer: lambda must be > 0");
}

} // namespace

double gegenbauer_eval(int k, double lambda, double x) {
    check_degree(k, lambda);
    x = clamp_abscissa(x);
    if (k == 0) return 1.0;
    double prev = 1.0;
    double cur = 2.0 * lambda * x;
    for (int i = 2; i <= k; ++i) {
        const double next =
            (2.0 * (i + lambda - 1.0) * x * cur - (i + 2.0 * lambda - 2.0) * prev) / i;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::vector<double> gegenbauer_all(int K, double lambda, double x) {
    check_degree(K, lambda);
    x = clamp_abscissa(x);
    std::vector<double> c(static_cast<std::size_t>(K) + 1);
    c[0] = 1.0;
    if (K >= 1) c[1] = 2.0 * lambda * x;
    for (int k = 2; k <= K; ++k)
        c[k] = (2.0 * (k + lambda - 1.0) * x * c[k - 1] - (k + 2.0 * lambda - 2.0) * c[k - 2]) / k;
    return c;
}

double gegenbauer_at_one(int k, double lambda) {
    check_degree(k, lambda);
    return std::exp(std::lgamma(k + 2.0 * lambda) - std::lgamma(2.0 * lambda) -
                    std::lgamma(k + 1.0));
}

std::vector<double> gegenbauer_ratio_all(int K, double lambda, double x) {
    std::vector<double> r = gegenbauer_all(K, lambda, x);
    // C_k(1) by its own ratio recurrence: C_k(1)/C_{k-1}(1) = (k - 1 + 2 lambda)/k.
    double at_one = 1.0;
    for (int k = 1; k <= K; ++k) {
        at_one *= (k - 1.0 + 2.0 * lambda) / k;
        r[k] /= at_one;
    }
    return r;
}

} // namespace sphmult
