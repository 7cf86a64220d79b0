#include "sphmult/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sphmult/specialfns.hpp"
#include "sphmult/summation.hpp"

namespace sphmult {

namespace {

constexpr double kTiny = 1e-30;
constexpr double kFitFloor = 1e-14;

CoeffTable deviation_coeffs(const CoeffTable& f, const std::vector<double>& eta) {
    CoeffTable dev(f.K);
    for (int k = 0; k <= f.K; ++k)
        for (int j = 0; j <= 2 * k; ++j) dev.at(k, j) = (eta[k] - 1.0) * f.at(k, j);
    return dev;
}

} // namespace

AnalysisContext::AnalysisContext(int K_, int oversample)
    : K(K_),
      grid(sphere_grid(K_)),
      basis(grid, K_),
      fine_grid(sphere_grid(K_, oversample * (K_ + 2), oversample * (2 * K_ + 2))),
      fine_basis(fine_grid, K_) {}

double lp_norm(const SphereGrid& grid, std::span<const double> values, double p) {
    if (!(p >= 1.0)) throw std::domain_error("lp_norm: p must be >= 1");
    if (values.size() != grid.size())
        throw std::invalid_argument("lp_norm: value count does not match the grid");
    const double inv_omega = 1.0 / (4.0 * M_PI);
    NeumaierSum acc;
    for (int i = 0; i < grid.n_theta; ++i)
        for (int q = 0; q < grid.n_phi; ++q) {
            const double f = std::abs(values[static_cast<std::size_t>(i) * grid.n_phi + q]);
            const double fp = (p == 2.0) ? f * f : (p == 1.0 ? f : std::pow(f, p));
            acc.add(grid.node_weight(i, q) * inv_omega * fp);
        }
    return std::pow(acc.value(), 1.0 / p);
}

CoeffTable forward_coeffs(const HarmonicBasis& basis, std::span<const double> values) {
    return basis.forward(values);
}

ParsevalReport parseval_equality_check(const AnalysisContext& ctx, const CoeffTable& f,
                                       const MultiplierFamily& family, double t) {
    const std::vector<double> eta = family.eval(f.K, t);
    ParsevalReport rep;
    rep.t = t;
    NeumaierSum lhs;
    for (int k = 0; k <= f.K; ++k) {
        const double d = eta[k] - 1.0;
        lhs.add(d * d * f.block_norm_squared(k));
    }
    rep.lhs = lhs.value();
    const std::vector<double> dev_vals = ctx.basis.synthesize(deviation_coeffs(f, eta));
    const double rhs = lp_norm(ctx.grid, dev_vals, 2.0);
    rep.rhs_sq = rhs * rhs;
    rep.residual = std::abs(rep.lhs - rep.rhs_sq) / (rep.lhs + kTiny);
    return rep;
}

MarginReport hausdorff_young_check(const AnalysisContext& ctx, const CoeffTable& f,
                                   const MultiplierFamily& family, double t, double p) {
    if (!(p > 1.0) || !(p <= 2.0))
        throw std::domain_error("hausdorff_young_check: p must lie in (1, 2]");
    const double q = p / (p - 1.0);
    const std::vector<double> eta = family.eval(f.K, t);
    MarginReport rep;
    rep.p = p;
    rep.t = t;
    NeumaierSum lhs_q;
    for (int k = 0; k <= f.K; ++k) {
        const double d_k = static_cast<double>(harmonic_dim(k, 2));
        const double s_k = f.block_norm_squared(k);
        lhs_q.add(std::pow(d_k, (2.0 - q) / (2.0 * q)) * std::pow(std::abs(eta[k] - 1.0), q) *
                  std::pow(s_k, 0.5 * q));
    }
    rep.lhs = std::pow(lhs_q.value(), 1.0 / q);
    const std::vector<double> dev_vals = ctx.fine_basis.synthesize(deviation_coeffs(f, eta));
    rep.rhs = lp_norm(ctx.fine_grid, dev_vals, p);
    rep.margin = rep.rhs - rep.lhs;
    return rep;
}

MarginReport l1_sup_check(const AnalysisContext& ctx, const CoeffTable& f,
                          const MultiplierFamily& family, double t) {
    const std::vector<double> eta = family.eval(f.K, t);
    MarginReport rep;
    rep.p = 1.0;
    rep.t = t;
    double sup = 0.0;
    for (int k = 0; k <= f.K; ++k) {
        const double d_k = static_cast<double>(harmonic_dim(k, 2));
        sup = std::max(sup, std::abs(eta[k] - 1.0) * std::sqrt(f.block_norm_squared(k) / d_k));
    }
    rep.lhs = sup;
    const std::vector<double> dev_vals = ctx.fine_basis.synthesize(deviation_coeffs(f, eta));
    rep.rhs = lp_norm(ctx.fine_grid, dev_vals, 1.0);
    rep.margin = rep.rhs - rep.lhs;
    return rep;
}

KernelIdentityReport kernel_identity_check(const AnalysisContext& ctx,
                                           const CoefficientKernel& kern,
                                           const MultiplierFamily& family, double t) {
    if (kern.sphere_dim() != 2)
        throw std::domain_error("kernel_identity_check: grid route requires m = 2");
    if (kern.band_limit() > ctx.K)
        throw std::domain_error("kernel_identity_check: kernel band limit exceeds context");
    const int K = kern.band_limit();
    const std::vector<double> eta = family.eval(K, t);
    KernelIdentityReport rep;
    rep.t = t;

    NeumaierSum lhs;
    for (int k = 0; k <= K; ++k) {
        const double d = eta[k] - 1.0;
        lhs.add(d * d * kern.block_sum_squares(k));
    }
    rep.lhs = lhs.value();

    // Right side done fully spatially: for every grid node y, synthesize
    // M(K^y) - K^y over the x grid, take its squared L2 norm by quadrature,
    // then integrate over y. Parallel over y with a fixed-order reduction.
    const SphereGrid& g = ctx.grid;
    const int ny = static_cast<int>(g.size());
    std::vector<double> per_y(static_cast<std::size_t>(ny));
#pragma omp parallel
    {
        std::vector<double> ybasis;
        CoeffTable cy(ctx.K);
#pragma omp for schedule(static)
        for (int node = 0; node < ny; ++node) {
            const int i = node / g.n_phi;
            const int q = node % g.n_phi;
            ctx.basis.node_basis(i, q, ybasis);
            std::fill(cy.v.begin(), cy.v.end(), 0.0);
            for (int k = 0; k <= K; ++k)
                for (int j = 0; j <= 2 * k; ++j)
                    cy.at(k, j) =
                        (eta[k] - 1.0) * kern.block(k)[j] * ybasis[CoeffTable::offset(k) + j];
            const std::vector<double> dev = ctx.basis.synthesize(cy);
            const double n2 = lp_norm(g, dev, 2.0);
            per_y[node] = g.node_weight(i, q) * n2 * n2;
        }
    }
    NeumaierSum rhs;
    for (double v : per_y) rhs.add(v);
    rep.rhs = rhs.value() / (4.0 * M_PI);
    rep.residual = std::abs(rep.lhs - rep.rhs) / (std::abs(rep.lhs) + kTiny);
    return rep;
}

KernelIdentityReport kernel_identity_check(const ZonalKernel& kern,
                                           const MultiplierFamily& family, double t,
                                           int n_quad) {
    const int K = kern.band_limit();
    const int m = kern.sphere_dim();
    if (n_quad <= 0) n_quad = std::max(64, 2 * K + m + 16);
    const std::vector<double> eta = family.eval(K, t);
    KernelIdentityReport rep;
    rep.t = t;
    rep.zonal_route = true;

    // generic block route
    NeumaierSum lhs;
    for (int k = 0; k <= K; ++k) {
        const double d = eta[k] - 1.0;
        const double dk = static_cast<double>(harmonic_dim(k, m));
        lhs.add(d * d * (kern.a(k) * kern.a(k)) * dk);
    }
    rep.lhs = lhs.value();

    // closed form: the deviation norm is constant in y
    NeumaierSum closed;
    for (int k = 0; k <= K; ++k) {
        const double dev = (eta[k] - 1.0) * kern.a(k);
        closed.add(dev * dev * static_cast<double>(harmonic_dim(k, m)));
    }
    rep.rhs_closed = closed.value();
    rep.closed_residual = std::abs(rep.lhs - rep.rhs_closed) / (std::abs(rep.lhs) + kTiny);

    // spatial route: G(u) = sum (eta_k - 1) a_k d_k C_k(u)/C_k(1) is the
    // deviation section about any pole; its squared zonal integral is the
    // right side.
    std::vector<double> dev_a(static_cast<std::size_t>(K) + 1);
    for (int k = 0; k <= K; ++k) dev_a[k] = (eta[k] - 1.0) * kern.a(k);
    const double lambda = 0.5 * (m - 1);
    std::vector<double> dvec(static_cast<std::size_t>(K) + 1);
    for (int k = 0; k <= K; ++k) dvec[k] = static_cast<double>(harmonic_dim(k, m));
    rep.rhs = zonal_integral(
        [&](double u) {
            const std::vector<double> r = gegenbauer_ratio_all(K, lambda, u);
            NeumaierSum acc;
            for (int k = 0; k <= K; ++k) acc.add(dev_a[k] * dvec[k] * r[k]);
            const double v = acc.value();
            return v * v;
        },
        m, n_quad);
    rep.residual = std::abs(rep.lhs - rep.rhs) / (std::abs(rep.lhs) + kTiny);
    return rep;
}

double holder_integral(const ZonalKernel& kern, const MultiplierFamily& family, double t) {
    const int K = kern.band_limit();
    const std::vector<double> eta = family.eval(K, t);
    NeumaierSum acc;
    for (int k = 0; k <= K; ++k)
        acc.add((eta[k] - 1.0) * kern.a(k) *
                static_cast<double>(harmonic_dim(k, kern.sphere_dim())));
    return std::abs(acc.value());
}

double holder_integral(const AnalysisContext& ctx, const CoefficientKernel& kern,
                       const MultiplierFamily& family, double t) {
    if (kern.sphere_dim() != 2)
        throw std::domain_error("holder_integral: grid route requires m = 2");
    const int K = kern.band_limit();
    const std::vector<double> eta = family.eval(K, t);
    const SphereGrid& g = ctx.grid;
    const int ny = static_cast<int>(g.size());
    std::vector<double> per_y(static_cast<std::size_t>(ny));
#pragma omp parallel
    {
        std::vector<double> ybasis;
#pragma omp for schedule(static)
        for (int node = 0; node < ny; ++node) {
            const int i = node / g.n_phi;
            const int q = node % g.n_phi;
            ctx.basis.node_basis(i, q, ybasis);
            NeumaierSum diag;
            for (int k = 0; k <= K; ++k)
                for (int j = 0; j <= 2 * k; ++j) {
                    const double y = ybasis[CoeffTable::offset(k) + j];
                    diag.add((eta[k] - 1.0) * kern.block(k)[j] * y * y);
                }
            per_y[node] = g.node_weight(i, q) * std::abs(diag.value());
        }
    }
    NeumaierSum acc;
    for (double v : per_y) acc.add(v);
    return acc.value() / (4.0 * M_PI);
}

FitReport fit_loglog(std::span<const double> ts, std::span<const double> gs) {
    if (ts.size() != gs.size()) throw std::invalid_argument("fit_loglog: length mismatch");
    std::vector<double> lx, ly;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    int dropped = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (gs[i] > kFitFloor) {
            lx.push_back(std::log(ts[i]));
            ly.push_back(std::log(gs[i]));
            lo = std::min(lo, ts[i]);
            hi = std::max(hi, ts[i]);
        } else {
            ++dropped;
        }
    }
    if (lx.size() < 3)
        throw std::runtime_error("fit_loglog: fewer than 3 usable points (g > 1e-14)");
    const std::size_t n = lx.size();
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    FitReport rep;
    rep.slope = sxy / sxx;
    rep.intercept = my - rep.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (rep.intercept + rep.slope * lx[i]);
        ss += r * r;
    }
    rep.residual = std::sqrt(ss / n);
    rep.t_lo_used = lo;
    rep.t_hi_used = hi;
    rep.points_used = static_cast<int>(n);
    rep.points_dropped = dropped;
    return rep;
}

FitReport holder_exponent_fit(const ZonalKernel& kern, const MultiplierFamily& family,
                              std::span<const double> t_grid) {
    std::vector<double> gs(t_grid.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < t_grid.size(); ++i)
        gs[i] = holder_integral(kern, family, t_grid[i]);
    return fit_loglog(t_grid, gs);
}

SqrtDeviationReport sqrt_deviation_identity_check(const ZonalKernel& kern,
                                                  const MultiplierFamily& family, double t) {
    const int K = kern.band_limit();
    const int m = kern.sphere_dim();
    const std::vector<double> eta = family.eval(K, t);
    SqrtDeviationReport rep;
    rep.t = t;
    // left: Parseval applied to the deviation of K_half (coefficients sqrt(a))
    NeumaierSum lhs;
    const ZonalKernel half = kern.sqrt_kernel();
    for (int k = 0; k <= K; ++k) {
        const double d = eta[k] - 1.0;
        lhs.add(d * d * (half.a(k) * half.a(k)) * static_cast<double>(harmonic_dim(k, m)));
    }
    rep.lhs = lhs.value();
    // right: M_t(M_t K^y - K^y)(y) - (M_t K^y - K^y)(y), two multiplier passes
    NeumaierSum rhs;
    for (int k = 0; k <= K; ++k) {
        const double w = eta[k] * (eta[k] - 1.0) - (eta[k] - 1.0);
        rhs.add(w * kern.a(k) * static_cast<double>(harmonic_dim(k, m)));
    }
    rep.rhs = rhs.value();
    rep.residual = std::abs(rep.lhs - rep.rhs) / (std::abs(rep.lhs) + kTiny);
    // bound route (the |eta| <= 1 families give the factor 2)
    rep.bound = (std::abs(eta[0]) + 1.0) * holder_integral(kern, family, t);
    rep.bound_holds = rep.lhs <= rep.bound + 1e-12 * (1.0 + rep.bound);
    return rep;
}

double keyabst_sum(const CoefficientKernel& kern, const MultiplierFamily& family, double t) {
    const int K = kern.band_limit();
    const std::vector<double> eta = family.eval(K, t);
    NeumaierSum acc;
    for (int k = 0; k <= K; ++k) {
        const double d = eta[k] - 1.0;
        acc.add(d * d * kern.block_sum(k));
    }
    return acc.value();
}

double keyabst_sum(const ZonalKernel& kern, const MultiplierFamily& family, double t) {
    const int K = kern.band_limit();
    const std::vector<double> eta = family.eval(K, t);
    NeumaierSum acc;
    for (int k = 0; k <= K; ++k) {
        const double d = eta[k] - 1.0;
        acc.add(d * d * kern.a(k) * static_cast<double>(harmonic_dim(k, kern.sphere_dim())));
    }
    return acc.value();
}

KeyabstReport keyabst_scan(const ZonalKernel& kern, const MultiplierFamily& family,
                           std::span<const double> t_grid, double beta) {
    KeyabstReport rep;
    rep.beta = beta;
    rep.t.assign(t_grid.begin(), t_grid.end());
    rep.s.resize(t_grid.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < t_grid.size(); ++i)
        rep.s[i] = keyabst_sum(kern, family, t_grid[i]);
    for (std::size_t i = 0; i < t_grid.size(); ++i)
        rep.sup_ratio = std::max(rep.sup_ratio, rep.s[i] / std::pow(rep.t[i], beta));
    return rep;
}

double DecayReport::window_ratio() const {
    double lo = windows.front().sup, hi = lo;
    for (const Window& w : windows) {
        lo = std::min(lo, w.sup);
        hi = std::max(hi, w.sup);
    }
    return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
}

double DecayReport::growth_factor() const {
    return windows.front().sup > 0.0
               ? windows.back().sup / windows.front().sup
               : std::numeric_limits<double>::infinity();
}

bool DecayReport::monotone_increasing() const {
    for (std::size_t i = 1; i < windows.size(); ++i)
        if (windows[i].sup < windows[i - 1].sup * (1.0 - 1e-9)) return false;
    return true;
}

DecayReport decay_check(const EigenvalueSequence& seq, double beta, int m, std::size_t n_lo,
                        std::size_t n_hi) {
    if (!(beta > 0.0) || !(beta <= 2.0))
        throw std::domain_error("decay_check: beta must lie in (0, 2]");
    if (n_lo < 1 || n_hi < n_lo || n_hi > seq.lambdas.size())
        throw std::domain_error("decay_check: empty or out-of-range window");
    DecayReport rep;
    rep.beta = beta;
    rep.m = m;
    const double expo = 1.0 + beta / m;
    std::size_t lo = n_lo;
    while (lo <= n_hi) {
        const std::size_t hi = std::min(2 * lo - 1, n_hi);
        DecayReport::Window w{lo, hi, 0.0};
        for (std::size_t n = lo; n <= hi; ++n)
            w.sup = std::max(w.sup, seq.lambdas[n - 1] * std::pow(static_cast<double>(n), expo));
        rep.windows.push_back(w);
        rep.sup_value = std::max(rep.sup_value, w.sup);
        lo = 2 * lo;
    }
    return rep;
}

PipelineReport end_to_end_theorem31(const ZonalKernel& kern, const MultiplierFamily& family,
                                    std::span<const double> t_grid, std::size_t n_lo,
                                    std::size_t n_hi, int half_K, int half_N,
                                    double decay_growth_limit) {
    PipelineReport rep;
    rep.decay_growth_limit = decay_growth_limit;

    rep.half_bounded = half_bounded_diagnostic(family, half_K, half_N);
    rep.half_bounded_status =
        rep.half_bounded.M_lower > 1e-6 ? StageStatus::passed : StageStatus::failed;

    bool have_beta = false;
    try {
        rep.fit = holder_exponent_fit(kern, family, t_grid);
        rep.beta_above_two = rep.fit.slope > 2.0;
        rep.fit_status = rep.fit.slope > 0.0 ? StageStatus::passed : StageStatus::failed;
        have_beta = rep.fit_status == StageStatus::passed;
    } catch (const std::exception& e) {
        rep.fit_status = StageStatus::failed;
        rep.fit_error = e.what();
    }

    if (have_beta) {
        const EigenvalueSequence seq = eigenvalue_sequence(kern);
        const std::size_t hi = n_hi == 0 ? seq.lambdas.size() : n_hi;
        const double beta_used = std::min(rep.fit.slope, 2.0);
        rep.decay = decay_check(seq, beta_used, kern.sphere_dim(), n_lo, hi);
        rep.decay_status = rep.decay.growth_factor() <= decay_growth_limit
                               ? StageStatus::passed
                               : StageStatus::failed;
    } else {
        rep.decay_status = StageStatus::blocked;
    }

    rep.pass = rep.half_bounded_status == StageStatus::passed &&
               rep.fit_status == StageStatus::passed && rep.decay_status == StageStatus::passed;
    return rep;
}

const char* to_string(StageStatus s) {
    switch (s) {
        case StageStatus::passed: return "passed";
        case StageStatus::failed: return "failed";
        default: return "blocked";
    }
}

} // namespace sphmult
