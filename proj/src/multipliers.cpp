#include "sphmult/multipliers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sphmult/quadrature.hpp"
#include "sphmult/specialfns.hpp"
#include "sphmult/summation.hpp"

namespace sphmult {

namespace {

void check_t(double t) {
    if (!(t > 0.0) || !(t < M_PI))
        throw std::domain_error("multiplier family: t must lie in (0, pi)");
}

void check_m(int m) {
    if (m < 2) throw std::domain_error("multiplier family: m must be >= 2");
}

std::uint64_t key_bits(double t) { return std::bit_cast<std::uint64_t>(t); }

// rho_k^t for k = 0..K together with C_m(t)/omega_{m-1}, one Gauss-Legendre
// pass over [0,t]. rho_0 comes out exactly 1: numerator and denominator
// accumulate the identical terms.
struct CapBatch {
    std::vector<double> rho;
    double cap_mass;  // Int_0^t (sin h)^{m-1} dh
};

CapBatch cap_batch(int K, int m, double t, int n_quad) {
    const double lambda = 0.5 * (m - 1);
    const Rule1D& rule = gauss_legendre(n_quad);
    std::vector<NeumaierSum> num(static_cast<std::size_t>(K) + 1);
    NeumaierSum den;
    const double mid = 0.5 * t, hw = 0.5 * t;
    for (int q = 0; q < rule.n; ++q) {
        const double h = mid + hw * rule.nodes[q];
        const double w = hw * rule.weights[q] * std::pow(std::sin(h), m - 1.0);
        const std::vector<double> c = gegenbauer_all(K, lambda, std::cos(h));
        for (int k = 0; k <= K; ++k) num[k].add(w * c[k]);
        den.add(w);
    }
    CapBatch out;
    out.cap_mass = den.value();
    out.rho.resize(static_cast<std::size_t>(K) + 1);
    double at_one = 1.0;
    out.rho[0] = num[0].value() / out.cap_mass;
    for (int k = 1; k <= K; ++k) {
        at_one *= (k - 1.0 + 2.0 * lambda) / k;
        out.rho[k] = num[k].value() / (at_one * out.cap_mass);
    }
    return out;
}

int default_cap_quad(int k_cap, int m) { return std::max(64, k_cap + m + 8); }

} // namespace

MultiplierFamily::MultiplierFamily(std::string name, int m, int k_cap, std::optional<double> s,
                                   double uniform_bound)
    : name_(std::move(name)), m_(m), k_cap_(k_cap), declared_s_(s), uniform_bound_(uniform_bound) {
    check_m(m);
    if (k_cap < 0 || k_cap > kMaxGegenbauerDegree)
        throw std::domain_error("multiplier family: invalid degree cap");
}

std::vector<double> MultiplierFamily::eval(int K, double t) const {
    check_t(t);
    if (K < 0 || K > k_cap_)
        throw std::domain_error("multiplier family: degree exceeds configured cap");
    std::shared_ptr<const std::vector<double>> full;
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key_bits(t));
        if (it != cache_.end()) full = it->second;
    }
    if (!full) {
        auto computed = std::make_shared<const std::vector<double>>(compute(t));
        std::lock_guard<std::mutex> lock(mu_);
        full = cache_.emplace(key_bits(t), computed).first->second;
        // insert-once: if another thread won the race its value is kept
    }
    return std::vector<double>(full->begin(), full->begin() + K + 1);
}

double MultiplierFamily::eval_one(int k, double t) const { return eval(k, t)[k]; }

// --- shifting ------------------------------------------------------------------

ShiftingFamily::ShiftingFamily(int m, int k_cap)
    : MultiplierFamily("shifting", m, k_cap, 2.0, 1.0) {}

std::vector<double> ShiftingFamily::compute(double t) const {
    return gegenbauer_ratio_all(k_cap_, 0.5 * (m_ - 1), std::cos(t));
}

// --- combinations of shiftings ---------------------------------------------------

ComboFamily::ComboFamily(int m, int l, int k_cap)
    : MultiplierFamily("combo", m, k_cap, 2.0 * l,
                       std::pow(2.0, 2 * l) / static_cast<double>(binomial(2 * l, l)) - 1.0),
      l_(l) {
    if (l < 1 || l > 10) throw std::domain_error("combo family: l must be in [1, 10]");
    const double central = static_cast<double>(binomial(2 * l, l));
    signed_weights_.resize(static_cast<std::size_t>(l) + 1, 0.0);
    for (int j = 1; j <= l; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        signed_weights_[j] = -2.0 * sign * static_cast<double>(binomial(2 * l, l - j)) / central;
    }
}

std::vector<double> ComboFamily::compute(double t) const {
    const double lambda = 0.5 * (m_ - 1);
    std::vector<double> eta(static_cast<std::size_t>(k_cap_) + 1, 0.0);
    for (int j = 1; j <= l_; ++j) {
        // cos(jt) may leave [0,pi]; the cosine itself stays in [-1,1].
        const std::vector<double> r = gegenbauer_ratio_all(k_cap_, lambda, std::cos(j * t));
        for (int k = 0; k <= k_cap_; ++k) eta[k] += signed_weights_[j] * r[k];
    }
    return eta;
}

// --- cap averages -----------------------------------------------------------------

CapFamily::CapFamily(int m, int k_cap, int n_quad)
    : MultiplierFamily("cap", m, k_cap, 2.0, 1.0),
      n_quad_(n_quad > 0 ? n_quad : default_cap_quad(k_cap, m)) {}

std::vector<double> CapFamily::compute(double t) const {
    return cap_batch(k_cap_, m_, t, n_quad_).rho;
}

// --- Steklov-type means -------------------------------------------------------------

SteklovFamily::SteklovFamily(int m, int k_cap, int n_outer, int n_inner)
    : MultiplierFamily("steklov", m, k_cap, 2.0, 1.0),
      n_outer_(n_outer),
      n_inner_(n_inner > 0 ? n_inner : default_cap_quad(k_cap, m)) {}

std::vector<double> SteklovFamily::compute(double t) const {
    const Rule1D& rule = gauss_legendre(n_outer_);
    std::vector<NeumaierSum> num(static_cast<std::size_t>(k_cap_) + 1);
    NeumaierSum den;
    const double mid = 0.5 * t, hw = 0.5 * t;
    for (int q = 0; q < rule.n; ++q) {
        const double s = mid + hw * rule.nodes[q];
        const CapBatch cb = cap_batch(k_cap_, m_, s, n_inner_);
        // C_m(s)/R_m(s) with the omega_{m-1} factors cancelled.
        const double w = hw * rule.weights[q] * cb.cap_mass / std::pow(std::sin(s), m_ - 1.0);
        for (int k = 0; k <= k_cap_; ++k) num[k].add(w * cb.rho[k]);
        den.add(w);
    }
    std::vector<double> phi(static_cast<std::size_t>(k_cap_) + 1);
    const double d = den.value();
    for (int k = 0; k <= k_cap_; ++k) phi[k] = num[k].value() / d;
    return phi;
}

// --- custom families ------------------------------------------------------------------

CustomTableFamily::CustomTableFamily(int m, int k_cap, std::optional<double> declared_s,
                                     double declared_uniform_bound)
    : MultiplierFamily("custom", m, k_cap, declared_s, declared_uniform_bound) {}

void CustomTableFamily::set(int k, double t, double eta) {
    check_t(t);
    if (k < 0 || k > k_cap_) throw std::domain_error("custom family: k outside [0, cap]");
    auto& row = rows_[key_bits(t)];
    if (row.empty())
        row.assign(static_cast<std::size_t>(k_cap_) + 1, std::numeric_limits<double>::quiet_NaN());
    row[k] = eta;
}

std::vector<double> CustomTableFamily::compute(double t) const {
    auto it = rows_.find(key_bits(t));
    if (it == rows_.end())
        throw std::domain_error("custom family: t outside the tabulated lattice");
    for (double v : it->second)
        if (std::isnan(v))
            throw std::domain_error("custom family: incomplete row for requested t");
    return it->second;
}

CallableFamily::CallableFamily(std::string name, int m, Fn fn, int k_cap,
                               std::optional<double> declared_s, double declared_uniform_bound)
    : MultiplierFamily(std::move(name), m, k_cap, declared_s, declared_uniform_bound), fn_(fn) {}

std::vector<double> CallableFamily::compute(double t) const {
    std::vector<double> eta(static_cast<std::size_t>(k_cap_) + 1);
    for (int k = 0; k <= k_cap_; ++k) eta[k] = fn_(k, t);
    return eta;
}

std::unique_ptr<MultiplierFamily> identity_family(int m, int k_cap) {
    return std::make_unique<CallableFamily>(
        "identity", m, +[](int, double) { return 1.0; }, k_cap, std::nullopt, 1.0);
}

// --- scalar entry points -----------------------------------------------------------------

double shifting_multiplier(int k, double t, int m) {
    check_t(t);
    check_m(m);
    const double lambda = 0.5 * (m - 1);
    if (k == 0) return 1.0;
    return gegenbauer_eval(k, lambda, std::cos(t)) / gegenbauer_at_one(k, lambda);
}

double combo_multiplier(int k, double t, int l, int m) {
    ComboFamily fam(m, l, k);
    return fam.eval(k, t)[k];
}

double cap_multiplier(int k, double t, int m, int n_quad) {
    check_t(t);
    check_m(m);
    if (n_quad <= 0) n_quad = std::max(64, k + m + 8);
    return cap_batch(k, m, t, n_quad).rho[k];
}

double steklov_multiplier(int k, double t, int m, int n_quad) {
    SteklovFamily fam(m, k, n_quad > 0 ? n_quad : 64);
    return fam.eval(k, t)[k];
}

double cap_volume(double t, int m, int n_quad) {
    check_m(m);
    if (!(t > 0.0) || !(t <= M_PI)) throw std::domain_error("cap_volume: t must lie in (0, pi]");
    const double em = m - 1.0;
    return surface_area(m - 1) *
           integrate_profile([&](double h) { return std::pow(std::sin(h), em); }, 0.0, t, n_quad);
}

double steklov_normalizer(double t, int m, int n_quad) {
    check_t(t);
    check_m(m);
    const double em = m - 1.0;
    const int n_inner = std::max(64, n_quad);
    return integrate_profile(
        [&](double s) {
            const double mass = integrate_profile(
                [&](double h) { return std::pow(std::sin(h), em); }, 0.0, s, n_inner);
            return mass / std::pow(std::sin(s), em);
        },
        0.0, t, n_quad);
}

// --- diagnostics ---------------------------------------------------------------------------

EquivalenceReport equivalence_constants(const MultiplierFamily& family, double s, int k_min,
                                        int k_max, const std::vector<double>& t_grid) {
    if (k_min < 1 || k_max < k_min)
        throw std::domain_error("equivalence_constants: need 1 <= k_min <= k_max");
    if (t_grid.empty()) throw std::domain_error("equivalence_constants: empty t grid");
    EquivalenceReport rep;
    rep.s = s;
    rep.k_min = k_min;
    rep.k_max = k_max;
    rep.t_min = *std::min_element(t_grid.begin(), t_grid.end());
    rep.t_max = *std::max_element(t_grid.begin(), t_grid.end());
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double max_abs_dev = 0.0;
    for (double t : t_grid) {
        const std::vector<double> eta = family.eval(k_max, t);
        for (int k = k_min; k <= k_max; ++k) {
            const double dev = 1.0 - eta[k];
            if (dev < 0.0) rep.sign_violations.emplace_back(k, t);
            const double denom = std::pow(std::min(1.0, k * t), s);
            const double r = dev / denom;
            lo = std::min(lo, r);
            hi = std::max(hi, r);
            max_abs_dev = std::max(max_abs_dev, std::abs(dev));
            ++rep.lattice_points;
        }
    }
    rep.c_low = lo;
    rep.c_high = hi;
    rep.degenerate = max_abs_dev < 1e-14;
    return rep;
}

HalfBoundedReport half_bounded_diagnostic(const MultiplierFamily& family, int K, int N) {
    if (K < 1 || N < 1 || K > 10000 || N > 10000)
        throw std::domain_error("half_bounded_diagnostic: K, N must be in [1, 10^4]");
    HalfBoundedReport rep;
    rep.K = K;
    rep.N = N;
    double m_lower = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= N; ++n) {
        const std::vector<double> eta = family.eval(K, 1.0 / n);
        for (int k = n; k <= K; ++k) m_lower = std::min(m_lower, std::abs(eta[k] - 1.0));
    }
    rep.M_lower = std::isfinite(m_lower) ? m_lower : 0.0;
    // decay in n at fixed k, on a 1-2-5 ladder of sample degrees
    for (int k : {1, 2, 5, 10, 20, 50, 100, 200, 500, 1000}) {
        if (k > K) break;
        HalfBoundedReport::DecayRow row;
        row.k = k;
        for (int n = k; n <= std::max(N, 16 * k); n *= 2) {
            row.n.push_back(n);
            row.b.push_back(std::abs(family.eval(k, 1.0 / n)[k] - 1.0));
        }
        rep.decay_table.push_back(std::move(row));
    }
    return rep;
}

double uniform_bound(const MultiplierFamily& family, int k_min, int k_max,
                     const std::vector<double>& t_grid) {
    if (t_grid.empty()) throw std::domain_error("uniform_bound: empty t grid");
    double sup = 0.0;
    for (double t : t_grid) {
        const std::vector<double> eta = family.eval(k_max, t);
        for (int k = k_min; k <= k_max; ++k) sup = std::max(sup, std::abs(eta[k]));
    }
    return sup;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2)
        throw std::domain_error("log_spaced: need 0 < lo < hi and count >= 2");
    std::vector<double> out(static_cast<std::size_t>(count));
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < count; ++i)
        out[i] = std::exp(llo + (lhi - llo) * i / (count - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

} // namespace sphmult
