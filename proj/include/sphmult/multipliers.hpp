#pragma once

// The four parameterized multiplier families on S^m (shifting, combinations
// of shiftings, cap averages, Steklov-type means), table-backed custom
// families, and the diagnostics their use as approximate identities calls
// for: equivalence constants against (min{1,kt})^s, half-boundedness of the
// deviations, uniform boundedness.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sphmult {

// eta_k^t for k = 0..K, one family member per t in (0, pi).
//
// Families are immutable after construction. Evaluation is memoized per t
// behind an insert-once table; a family always computes the full vector up
// to its configured degree cap so that the value of eta_k^t never depends
// on the batch size it was requested with.
class MultiplierFamily {
public:
    virtual ~MultiplierFamily() = default;

    const std::string& name() const { return name_; }
    int sphere_dim() const { return m_; }
    int degree_cap() const { return k_cap_; }
    std::optional<double> declared_s() const { return declared_s_; }
    double declared_uniform_bound() const { return uniform_bound_; }

    /// eta_0^t .. eta_K^t. Requires K <= degree_cap().
    std::vector<double> eval(int K, double t) const;
    double eval_one(int k, double t) const;

protected:
    MultiplierFamily(std::string name, int m, int k_cap, std::optional<double> s,
                     double uniform_bound);
    virtual std::vector<double> compute(double t) const = 0;  // full 0..k_cap vector

    std::string name_;
    int m_;
    int k_cap_;
    std::optional<double> declared_s_;
    double uniform_bound_;

private:
    mutable std::mutex mu_;
    mutable std::map<std::uint64_t, std::shared_ptr<const std::vector<double>>> cache_;
};

inline constexpr int kDefaultDegreeCap = 256;

// --- the section-4 families -------------------------------------------------

/// Shifting operator S_t: eta_k^t = C_k^{(m-1)/2}(cos t) / C_k^{(m-1)/2}(1).
class ShiftingFamily final : public MultiplierFamily {
public:
    explicit ShiftingFamily(int m, int k_cap = kDefaultDegreeCap);

protected:
    std::vector<double> compute(double t) const override;
};

/// Combination of shiftings S_{l,t}:
///   eta_k^t(l) = -2 binom(2l,l)^{-1} sum_{j=1..l} (-1)^j binom(2l,l-j)
///                C_k^{(m-1)/2}(cos jt) / C_k^{(m-1)/2}(1).
/// l = 1 collapses to the shifting family.
class ComboFamily final : public MultiplierFamily {
public:
    ComboFamily(int m, int l, int k_cap = kDefaultDegreeCap);
    int order() const { return l_; }

protected:
    std::vector<double> compute(double t) const override;

private:
    int l_;
    std::vector<double> signed_weights_;  // -2 binom(2l,l)^{-1} (-1)^j binom(2l,l-j)
};

/// Cap average M_t: rho_k^t = omega_{m-1} / (C_k(1) C_m(t))
///                            * Int_0^t C_k^{(m-1)/2}(cos h) (sin h)^{m-1} dh.
class CapFamily final : public MultiplierFamily {
public:
    explicit CapFamily(int m, int k_cap = kDefaultDegreeCap, int n_quad = 0);
    int quadrature_points() const { return n_quad_; }

protected:
    std::vector<double> compute(double t) const override;

private:
    int n_quad_;
};

/// Steklov-type mean E_t: phi_k^t = (1/D_m(t)) Int_0^t [C_m(s)/R_m(s)] rho_k^s ds,
/// with D_m(t) = Int_0^t C_m(s)/R_m(s) ds. The integrand C_m(s)/R_m(s) ~ s/m
/// at the removable s = 0 endpoint; Gauss-Legendre nodes stay inside (0,t).
class SteklovFamily final : public MultiplierFamily {
public:
    explicit SteklovFamily(int m, int k_cap = kDefaultDegreeCap, int n_outer = 64,
                           int n_inner = 0);

protected:
    std::vector<double> compute(double t) const override;

private:
    int n_outer_;
    int n_inner_;
};

/// Family backed by an explicit (k,t) -> eta table; lookups outside the
/// table are domain errors.
class CustomTableFamily final : public MultiplierFamily {
public:
    CustomTableFamily(int m, int k_cap, std::optional<double> declared_s,
                      double declared_uniform_bound);
    void set(int k, double t, double eta);

protected:
    std::vector<double> compute(double t) const override;

private:
    std::map<std::uint64_t, std::vector<double>> rows_;  // t bits -> eta_0..eta_cap
};

/// Family defined by a callable eta(k, t). Test and CLI plumbing; also hosts
/// the textbook half-bounded example eta_k^t = 1/(1+kt).
class CallableFamily final : public MultiplierFamily {
public:
    using Fn = double (*)(int, double);
    CallableFamily(std::string name, int m, Fn fn, int k_cap = kDefaultDegreeCap,
                   std::optional<double> declared_s = std::nullopt,
                   double declared_uniform_bound = 1.0);

protected:
    std::vector<double> compute(double t) const override;

private:
    Fn fn_;
};

std::unique_ptr<MultiplierFamily> identity_family(int m, int k_cap = kDefaultDegreeCap);

// --- scalar entry points ------------------------------------------------------

double shifting_multiplier(int k, double t, int m);
double combo_multiplier(int k, double t, int l, int m);
double cap_multiplier(int k, double t, int m, int n_quad = 0);
double steklov_multiplier(int k, double t, int m, int n_quad = 0);

/// Total volume of the cap of colatitude radius t:
/// C_m(t) = omega_{m-1} Int_0^t (sin h)^{m-1} dh.
double cap_volume(double t, int m, int n_quad = 64);

/// D_m(t) = Int_0^t C_m(s)/R_m(s) ds with R_m(s) = omega_{m-1} (sin s)^{m-1}.
double steklov_normalizer(double t, int m, int n_quad = 64);

// --- diagnostics --------------------------------------------------------------

struct EquivalenceReport {
    double s = 0.0;
    double c_low = 0.0;   // min over the lattice of (1 - eta_k^t) / min{1,kt}^s
    double c_high = 0.0;  // max over the lattice
    int k_min = 0, k_max = 0;
    double t_min = 0.0, t_max = 0.0;
    std::size_t lattice_points = 0;
    bool degenerate = false;  // all deviations vanished (identity family)
    std::vector<std::pair<int, double>> sign_violations;  // (k,t) with 1 - eta < 0
};

/// Samples (1 - eta_k^t)/min{1,kt}^s over k in [k_min,k_max] x t_grid.
/// Sign violations are reported, not thrown.
EquivalenceReport equivalence_constants(const MultiplierFamily& family, double s, int k_min,
                                        int k_max, const std::vector<double>& t_grid);

struct HalfBoundedReport {
    int K = 0, N = 0;
    double M_lower = 0.0;  // min of b_{k,n} = |eta_k^{1/n} - 1| over n <= N, n <= k <= K
    struct DecayRow {
        int k;
        std::vector<int> n;
        std::vector<double> b;
    };
    std::vector<DecayRow> decay_table;  // b_{k,n} at n = k, 2k, 4k, ... for sample ks
};

HalfBoundedReport half_bounded_diagnostic(const MultiplierFamily& family, int K, int N);

/// sup of |eta_k^t| over the lattice; on L^2 this is the operator norm.
double uniform_bound(const MultiplierFamily& family, int k_min, int k_max,
                     const std::vector<double>& t_grid);

/// count log-spaced points in [lo, hi], endpoints included.
std::vector<double> log_spaced(double lo, double hi, int count);

} // namespace sphmult
