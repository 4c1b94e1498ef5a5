// tradeoff.hpp — Hoeffding divergence and anti-divergence, the Hellinger arc
// and its rate identities, Legendre–Fenchel transforms of the psi cumulants,
// and the rate-to-alpha solvers.
//
// The Hoeffding divergence uses the Petz psi on alpha in (0,1); the
// anti-divergence uses the sandwiched psi* on alpha in [1, +inf]. Scalar
// suprema run on a compact bracket with the closed-form endpoint values added
// explicitly.

#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "explab/classical.hpp"
#include "explab/divergence.hpp"
#include "explab/errors.hpp"
#include "explab/extreal.hpp"
#include "explab/scalar_opt.hpp"

namespace explab::tradeoff {

inline constexpr double kBracketDelta = 1e-9;

namespace detail {

/// sup_{alpha in (0,1)} [(alpha-1) r - psi(alpha)] / alpha with the alpha -> 1
/// endpoint -psi(1) included; +inf when r < D_0 = -psi(0).
template <class Psi>
ExtReal hoeffding_core(Psi&& psi, double r) {
    const double psi0 = psi(0.0);
    const double psi1 = psi(1.0);
    const double d0 = -psi0;
    if (r < d0 - 1e-12 * std::max(1.0, std::abs(d0))) return ExtReal::infinity();
    auto f = [&](double a) { return ((a - 1.0) * r - psi(a)) / a; };
    ScalarOpt m = golden_max(f, kBracketDelta, 1.0 - kBracketDelta, 1e-12);
    return std::max(m.value, -psi1);
}

/// max_{u in [0,1]} [u r - psi_tilde(u)] with endpoints u = 0 (value 0 for a
/// state with contained support) and u = 1 (value r - D_infty).
template <class PsiTilde>
double hoeffding_anti_core(PsiTilde&& psit, double r, double d_infty) {
    auto f = [&](double u) { return u * r - psit(u); };
    ScalarOpt m = golden_max(f, kBracketDelta, 1.0 - kBracketDelta, 1e-12);
    return std::max({m.value, 0.0, r - d_infty});
}

} // namespace detail

// --------------------------------------------------------------------------
// Hoeffding divergence H_r
// --------------------------------------------------------------------------

inline ExtReal hoeffding(const ClassicalWeight& rho, const ClassicalWeight& sigma, double r) {
    if (!(r > 0.0)) throw OutOfRangeError("hoeffding: r must be positive");
    if (rho.support_disjoint_from(sigma)) return ExtReal::infinity();
    return detail::hoeffding_core(
        [&](double a) { return divergence::psi_classical(rho, sigma, a); }, r);
}

inline ExtReal hoeffding(const herm::DensityOperator& rho, const herm::HermitianOperator& sigma,
                         double r) {
    if (!(r > 0.0)) throw OutOfRangeError("hoeffding: r must be positive");
    divergence::PetzKernel k = divergence::petz_kernel(rho.op(), sigma);
    if (k.supports_orthogonal()) return ExtReal::infinity();
    return detail::hoeffding_core([&](double a) { return std::log(k.q(a)); }, r);
}

// --------------------------------------------------------------------------
// Hoeffding anti-divergence H*_r
// --------------------------------------------------------------------------

inline double hoeffding_anti(const ClassicalWeight& rho, const ClassicalWeight& sigma, double r) {
    if (!(r > 0.0)) throw OutOfRangeError("hoeffding_anti: r must be positive");
    if (!rho.support_contained_in(sigma))
        throw SupportMismatchError("hoeffding_anti: supp(rho) not contained in supp(sigma), D_infty is infinite");
    const double d_inf = divergence::max_rel_entropy(rho, sigma).value();
    auto psit = [&](double u) {
        return (1.0 - u) * divergence::psi_classical(rho, sigma, 1.0 / (1.0 - u));
    };
    return detail::hoeffding_anti_core(psit, r, d_inf);
}

inline double hoeffding_anti(const herm::DensityOperator& rho, const herm::HermitianOperator& sigma,
                             double r) {
    if (!(r > 0.0)) throw OutOfRangeError("hoeffding_anti: r must be positive");
    divergence::PetzKernel k = divergence::petz_kernel(rho.op(), sigma);
    if (k.rho_leak() > divergence::kLeakTol)
        throw SupportMismatchError("hoeffding_anti: supp(rho) not contained in supp(sigma), D_infty is infinite");
    const double d_inf = divergence::max_rel_entropy(rho, sigma).value();
    auto psit = [&](double u) {
        double a = 1.0 / (1.0 - u);
        return (1.0 - u) * divergence::psi_eval(rho, sigma, a, divergence::Family::sandwiched).value();
    };
    return detail::hoeffding_anti_core(psit, r, d_inf);
}

// --------------------------------------------------------------------------
// Hellinger arc and classical rate machinery
// --------------------------------------------------------------------------

struct ArcPoint {
    double alpha;                  // arc parameter
    ClassicalWeight mu;            // normalized on the intersection support
    double rate_to_sigma;          // D(mu_alpha || sigma)
    double rate_to_rho;            // D(mu_alpha || rho)
};

/// mu_alpha(x) ∝ rho(x)^alpha sigma(x)^{1-alpha} on supp(rho) ∩ supp(sigma).
inline ArcPoint hellinger_arc(const ClassicalWeight& rho, const ClassicalWeight& sigma, double alpha) {
    if (rho.size() != sigma.size()) throw DimensionMismatchError("hellinger_arc: size mismatch");
    double tmax = -kInf;
    std::vector<double> t(rho.size(), -kInf);
    bool any = false;
    for (std::size_t x = 0; x < rho.size(); ++x) {
        if (rho[x] > 0.0 && sigma[x] > 0.0) {
            t[x] = alpha * std::log(rho[x]) + (1.0 - alpha) * std::log(sigma[x]);
            tmax = std::max(tmax, t[x]);
            any = true;
        }
    }
    if (!any) throw DisjointSupportError("hellinger_arc: disjoint supports");
    std::vector<double> w(rho.size(), 0.0);
    double s = 0.0;
    for (std::size_t x = 0; x < rho.size(); ++x)
        if (t[x] > -kInf) s += (w[x] = std::exp(t[x] - tmax));
    for (auto& v : w) v /= s;
    ClassicalWeight mu(std::move(w));
    double to_sigma = divergence::rel_entropy(mu, sigma).value();
    double to_rho = divergence::rel_entropy(mu, rho).value();
    return ArcPoint{alpha, std::move(mu), to_sigma, to_rho};
}

struct PsiDerivatives {
    double psi;
    double psi1;
    double psi2;  // >= 0
};

inline PsiDerivatives psi_derivatives(const ClassicalWeight& rho, const ClassicalWeight& sigma,
                                      double alpha) {
    auto m = divergence::psi_moments_classical(rho, sigma, alpha);
    return {m.psi, m.psi1, m.psi2};
}

/// -log sigma(X_infty) where X_infty is the argmax set of rho/sigma within a
/// relative ratio tolerance.
inline ExtReal r_infty(const ClassicalWeight& rho, const ClassicalWeight& sigma,
                       double ratio_tol = 1e-10) {
    if (rho.size() != sigma.size()) throw DimensionMismatchError("r_infty: size mismatch");
    if (!rho.support_contained_in(sigma))
        throw SupportMismatchError("r_infty: supp(rho) not contained in supp(sigma)");
    double lmax = -kInf;
    for (std::size_t x = 0; x < rho.size(); ++x)
        if (rho[x] > 0.0) lmax = std::max(lmax, std::log(rho[x]) - std::log(sigma[x]));
    double mass = 0.0;
    for (std::size_t x = 0; x < rho.size(); ++x)
        if (rho[x] > 0.0 && std::log(rho[x]) - std::log(sigma[x]) >= lmax - ratio_tol * std::max(1.0, std::abs(lmax)))
            mass += sigma[x];
    return -std::log(mass);
}

/// Unique alpha_r with D(mu_{alpha_r} || sigma) = r, for D_0 < r < r_infty and
/// strictly convex psi. The returned arc point carries
/// tilde-Psi(r) = D(mu_{alpha_r} || rho).
inline ArcPoint solve_rate_alpha(const ClassicalWeight& rho, const ClassicalWeight& sigma, double r) {
    if (!rho.support_contained_in(sigma))
        throw SupportMismatchError("solve_rate_alpha: supp(rho) not contained in supp(sigma)");
    if (divergence::psi_moments_classical(rho, sigma, 0.5).psi2 < 1e-12)
        throw DegenerateError("solve_rate_alpha: psi is affine, no unique root");
    const double d0 = -divergence::psi_classical(rho, sigma, 0.0);
    const double d = divergence::rel_entropy(rho, sigma).value();
    const double rinf = r_infty(rho, sigma).value();
    if (!(r > d0 && r < rinf))
        throw OutOfRangeError("solve_rate_alpha: r must lie strictly between D_0 and r_infty");

    auto g = [&](double a) {  // D(mu_alpha || sigma) = alpha psi'(alpha) - psi(alpha)
        auto m = divergence::psi_moments_classical(rho, sigma, a);
        return a * m.psi1 - m.psi;
    };
    double alpha;
    if (std::abs(r - d) <= 1e-13 * std::max(1.0, d)) {
        alpha = 1.0;
    } else if (r < d) {
        double lo = 1e-8;
        while (g(lo) > r && lo > 1e-300) lo *= 0.0625;  // r may sit barely above D_0
        alpha = bisect_root([&](double a) { return g(a) - r; }, lo, 1.0, 1e-14);
    } else {
        double hi = 2.0;
        while (g(hi) < r) {
            hi *= 2.0;
            if (hi > 0x1p60) throw ScanFailedError("solve_rate_alpha: bracket expansion failed");
        }
        alpha = bisect_root([&](double a) { return g(a) - r; }, 1.0, hi, 1e-12);
    }
    return hellinger_arc(rho, sigma, alpha);
}

// --------------------------------------------------------------------------
// Binary relative entropy d_2 and its inverse
// --------------------------------------------------------------------------

inline ExtReal d2(double a, double b) {
    if (a < 0.0 || a > 1.0 || b < 0.0 || b > 1.0) throw OutOfRangeError("d2: arguments must lie in [0,1]");
    auto term = [](double p, double q) -> double {
        if (p <= 0.0) return 0.0;
        if (q <= 0.0) return kInf;
        return p * (std::log(p) - std::log(q));
    };
    return term(a, b) + term(1.0 - a, 1.0 - b);
}

/// The root mu in (0, lambda] of d2(lambda || mu) = target; d2(lambda || .) is
/// decreasing there, so the root is unique.
inline double solve_d2(double lambda, double target, double tol = 1e-12) {
    if (lambda <= 0.0 || lambda >= 1.0) throw OutOfRangeError("solve_d2: lambda must lie in (0,1)");
    if (target < 0.0) throw OutOfRangeError("solve_d2: target must be nonnegative");
    if (target == 0.0) return lambda;
    double lo = lambda * 0.5;
    while (d2(lambda, lo).value() < target) {
        lo *= 0.5;
        if (lo < 1e-300) throw ScanFailedError("solve_d2: bracket expansion failed");
    }
    double mu = bisect_root([&](double m) { return d2(lambda, m).value() - target; }, lo, lambda, 0.0, 200);
    if (std::abs(d2(lambda, mu).value() - target) > tol)
        throw ScanFailedError("solve_d2: residual tolerance not reached");
    return mu;
}

// --------------------------------------------------------------------------
// Legendre–Fenchel machinery for the strong-converse transform
// --------------------------------------------------------------------------

/// Evaluator bundle for psi on [1, +inf): psi(1) = 0 and psi(alpha)/(alpha-1)
/// monotone increasing with limits D1_plus and D_infty; r_infty = Psi(D_infty).
struct LegendreData {
    std::function<double(double)> psi;
    double D1_plus = 0.0;
    double D_infty = 0.0;
    double r_infty = 0.0;
};

inline ExtReal legendre_Psi(const LegendreData& l, double c) {
    if (c > l.D_infty) return ExtReal::infinity();
    if (c <= l.D1_plus) return c;
    auto f = [&](double a) { return c * a - l.psi(a); };
    ScalarOpt m = expanding_golden_max(f, 1.0, 8.0, 0x1p24, 1e-11);
    return std::max(m.value, c);
}

inline ExtReal legendre_Psi_minus(const LegendreData& l, double c) {
    ExtReal p = legendre_Psi(l, c);
    if (p.is_pos_inf()) return p;
    return p.value() - c;
}

/// Three-case closed form of tilde-Psi(r) = sup_{u in [0,1]} { u r - psi~(u) }:
/// 0 below D1_plus, r - Psi^{-1}(r) in the middle range, r - D_infty above
/// r_infty. Psi^{-1} is found by bisection (Psi is strictly increasing there).
inline double legendre_tilde_Psi(const LegendreData& l, double r) {
    if (r <= l.D1_plus) return 0.0;
    if (r >= l.r_infty) return r - l.D_infty;
    auto g = [&](double c) { return legendre_Psi(l, c).value() - r; };
    double c = bisect_root(g, l.D1_plus, l.D_infty, 1e-13 * std::max(1.0, std::abs(l.D_infty)));
    return r - c;
}

inline LegendreData legendre_data_classical(const ClassicalWeight& rho, const ClassicalWeight& sigma) {
    if (!rho.support_contained_in(sigma))
        throw SupportMismatchError("legendre_data_classical: supp(rho) not contained in supp(sigma)");
    LegendreData l;
    l.psi = [rho, sigma](double a) { return divergence::psi_classical(rho, sigma, a); };
    l.D1_plus = divergence::rel_entropy(rho, sigma).value();
    l.D_infty = divergence::max_rel_entropy(rho, sigma).value();
    l.r_infty = r_infty(rho, sigma).value();
    return l;
}

/// Composite inf-psi over a finite family of admissible pairs; pairs with a
/// support violation contribute +inf and drop out of the minimum.
inline LegendreData legendre_data_composite(
    const std::vector<std::pair<ClassicalWeight, ClassicalWeight>>& pairs) {
    std::vector<std::pair<ClassicalWeight, ClassicalWeight>> ok;
    for (const auto& pr : pairs)
        if (pr.first.support_contained_in(pr.second)) ok.push_back(pr);
    if (ok.empty())
        throw SupportMismatchError("legendre_data_composite: no pair with contained support");
    LegendreData l;
    l.psi = [ok](double a) {
        double m = kInf;
        for (const auto& pr : ok) m = std::min(m, divergence::psi_classical(pr.first, pr.second, a));
        return m;
    };
    l.D1_plus = kInf;
    l.D_infty = kInf;
    for (const auto& pr : ok) {
        l.D1_plus = std::min(l.D1_plus, divergence::rel_entropy(pr.first, pr.second).value());
        l.D_infty = std::min(l.D_infty, divergence::max_rel_entropy(pr.first, pr.second).value());
    }
    auto f = [&](double a) { return l.D_infty * a - l.psi(a); };
    l.r_infty = expanding_golden_max(f, 1.0, 8.0, 0x1p16, 1e-11).value;
    return l;
}

} // namespace explab::tradeoff
