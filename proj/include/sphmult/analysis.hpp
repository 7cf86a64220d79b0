#pragma once

// Numerical verifiers for the multiplier estimates: the weighted Fourier-sum
// inequalities (with Parseval equality at p = 2), the kernel Fourier
// identity, the square-root-kernel deviation identity, the integrated
// Hoelder condition and its log-log exponent fit, and the eigenvalue decay
// check, composed into an end-to-end pipeline.
//
// Convention used throughout: every integral carries the normalized measure
// (1/omega_m) dsigma, norms and Fourier coefficients included. In this
// convention the Hausdorff-Young comparison constant is exactly 1; quoting
// the classical unnormalized prefactor omega^{(p-2)/2p} alongside normalized
// norms would make the inequality false already for constant functions.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sphmult/harmonic_basis.hpp"
#include "sphmult/kernels.hpp"
#include "sphmult/multipliers.hpp"
#include "sphmult/quadrature.hpp"

namespace sphmult {

// Grid + basis pair at exactness 2K, with a 3x-oversampled companion for the
// L^p quadratures that are not polynomial-exact (p != 2).
struct AnalysisContext {
    explicit AnalysisContext(int K, int oversample = 3);
    int K;
    SphereGrid grid;
    HarmonicBasis basis;
    SphereGrid fine_grid;
    HarmonicBasis fine_basis;
};

/// ((1/omega_2) sum w |f|^p)^{1/p}; exact for p = 2 and band-limited f
/// within grid exactness, quadrature-approximate otherwise.
double lp_norm(const SphereGrid& grid, std::span<const double> values, double p);

/// f_hat(k,j) by exact grid quadrature (alias of HarmonicBasis::forward).
CoeffTable forward_coeffs(const HarmonicBasis& basis, std::span<const double> values);

// --- Fourier-sum estimates -------------------------------------------------

struct ParsevalReport {
    double lhs = 0.0;     // sum_k |eta_k - 1|^2 sum_j f_hat(k,j)^2
    double rhs_sq = 0.0;  // ||Mf - f||_2^2 via spatial quadrature
    double residual = 0.0;
    double t = 0.0;
};

ParsevalReport parseval_equality_check(const AnalysisContext& ctx, const CoeffTable& f,
                                       const MultiplierFamily& family, double t);

struct MarginReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs; >= -eps_quad when the estimate holds
    double p = 0.0;
    double t = 0.0;
};

/// Theorem-2.1-type estimate for p in (1,2]; margin at p = 2 is zero to
/// rounding (Parseval).
MarginReport hausdorff_young_check(const AnalysisContext& ctx, const CoeffTable& f,
                                   const MultiplierFamily& family, double t, double p);

/// The p = 1 sup-form estimate.
MarginReport l1_sup_check(const AnalysisContext& ctx, const CoeffTable& f,
                          const MultiplierFamily& family, double t);

// --- kernel identities --------------------------------------------------------

struct KernelIdentityReport {
    double lhs = 0.0;        // sum_k |eta_k-1|^2 sum_j a_{k,j}^2
    double rhs = 0.0;        // (1/omega) Int ||M K^y - K^y||_2^2, spatial route
    double residual = 0.0;   // |lhs - rhs| / (|lhs| + tiny)
    double rhs_closed = 0.0; // zonal route only: closed-form right side
    double closed_residual = 0.0;
    bool zonal_route = false;
    double t = 0.0;
};

KernelIdentityReport kernel_identity_check(const AnalysisContext& ctx,
                                           const CoefficientKernel& kern,
                                           const MultiplierFamily& family, double t);
KernelIdentityReport kernel_identity_check(const ZonalKernel& kern,
                                           const MultiplierFamily& family, double t,
                                           int n_quad = 0);

// --- Hoelder machinery -----------------------------------------------------------

/// g(t) = (1/omega_m) Int |M_t(K^y)(y) - K^y(y)| dsigma(y).
/// Zonal kernels: the diagonal deviation is constant in y, so
/// g(t) = |sum_k (eta_k^t - 1) a_k d_k^m|.
double holder_integral(const ZonalKernel& kern, const MultiplierFamily& family, double t);
double holder_integral(const AnalysisContext& ctx, const CoefficientKernel& kern,
                       const MultiplierFamily& family, double t);

struct FitReport {
    double slope = 0.0;      // beta_hat, reported raw (no projection onto (0,2])
    double intercept = 0.0;  // log of the constant
    double residual = 0.0;   // rms of log deviations
    double t_lo_used = 0.0;
    double t_hi_used = 0.0;
    int points_used = 0;
    int points_dropped = 0;  // g <= 1e-14, excluded and reported
};

/// Ordinary least squares through (log t, log g). Throws on < 3 usable points.
FitReport fit_loglog(std::span<const double> ts, std::span<const double> gs);

FitReport holder_exponent_fit(const ZonalKernel& kern, const MultiplierFamily& family,
                              std::span<const double> t_grid);

struct SqrtDeviationReport {
    double lhs = 0.0;       // sum (eta_k-1)^2 a_k d_k  (deviation of K_half)
    double rhs = 0.0;       // sum [eta_k(eta_k-1) - (eta_k-1)] a_k d_k
    double residual = 0.0;
    double bound = 0.0;     // (|eta_0| + 1) g(t)
    bool bound_holds = false;
    double t = 0.0;
};

/// The deviation identity from the square-root-kernel lemma, both sides
/// evaluated by independent coefficient arithmetic, plus the
/// (|eta_0^t|+1) g(t) bound route.
SqrtDeviationReport sqrt_deviation_identity_check(const ZonalKernel& kern,
                                                  const MultiplierFamily& family, double t);

/// S(t) = sum_k |eta_k^t - 1|^2 A_k with A_k = sum_j a_{k,j}.
double keyabst_sum(const CoefficientKernel& kern, const MultiplierFamily& family, double t);
double keyabst_sum(const ZonalKernel& kern, const MultiplierFamily& family, double t);

struct KeyabstReport {
    std::vector<double> t;
    std::vector<double> s;          // S(t)
    double sup_ratio = 0.0;         // sup S(t)/t^beta when beta supplied
    double beta = 0.0;
};

KeyabstReport keyabst_scan(const ZonalKernel& kern, const MultiplierFamily& family,
                           std::span<const double> t_grid, double beta);

// --- eigenvalue decay ---------------------------------------------------------------

struct DecayReport {
    double beta = 0.0;
    int m = 0;
    double sup_value = 0.0;  // sup over the whole window of lambda_n n^{1+beta/m}
    struct Window {
        std::size_t n_lo, n_hi;
        double sup;
    };
    std::vector<Window> windows;  // dyadic subdivisions of [n_lo, n_hi]

    double window_ratio() const;   // max window sup / min window sup
    double growth_factor() const;  // last window sup / first window sup
    bool monotone_increasing() const;
};

/// Windowed suprema of lambda_n n^{1+beta/m} over dyadic n ranges.
DecayReport decay_check(const EigenvalueSequence& seq, double beta, int m, std::size_t n_lo,
                        std::size_t n_hi);

// --- the full Theorem-3.1 pipeline ------------------------------------------------------

enum class StageStatus { passed, failed, blocked };

struct PipelineReport {
    HalfBoundedReport half_bounded;
    StageStatus half_bounded_status = StageStatus::blocked;

    FitReport fit;
    StageStatus fit_status = StageStatus::blocked;
    bool beta_above_two = false;  // flagged, not an error
    std::string fit_error;

    DecayReport decay;
    StageStatus decay_status = StageStatus::blocked;
    double decay_growth_limit = 4.0;

    bool pass = false;
};

/// Runs half-boundedness, the Hoelder fit, and the decay check in sequence;
/// every stage's outcome is recorded, none is silently skipped. The decay
/// stage uses beta_hat clamped to (0, 2] (the Hoelder definition's range)
/// and passes when the windowed sups grow by at most decay_growth_limit.
PipelineReport end_to_end_theorem31(const ZonalKernel& kern, const MultiplierFamily& family,
                                    std::span<const double> t_grid, std::size_t n_lo = 16,
                                    std::size_t n_hi = 0, int half_K = 200, int half_N = 100,
                                    double decay_growth_limit = 4.0);

const char* to_string(StageStatus s);

} // namespace sphmult
