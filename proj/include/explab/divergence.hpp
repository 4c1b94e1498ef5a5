// divergence.hpp — pairwise divergences for quantum and classical states:
// Umegaki relative entropy, Petz / sandwiched / log-Euclidean / maximal Rényi
// families, max-relative entropy, Chernoff divergence, and the psi / psi-tilde
// cumulant functions they are built from.
//
// Conventions: logn 0 := 0 and 0^t := 0 throughout (functions act on the
// support only). A divergence is +inf exactly under the documented support
// conditions. Second arguments may be subnormalized PSD weights.

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "explab/classical.hpp"
#include "explab/errors.hpp"
#include "explab/extreal.hpp"
#include "explab/hermitian.hpp"
#include "explab/scalar_opt.hpp"

namespace explab::divergence {

enum class Family { petz, sandwiched };

inline constexpr double kLeakTol = 1e-10;  // state mass outside the other support => +inf

// --------------------------------------------------------------------------
// classical path
// --------------------------------------------------------------------------

/// psi(rho||sigma|alpha) = log sum_{x in supp(rho) ∩ supp(sigma)} rho^alpha sigma^{1-alpha},
/// defined for every real alpha. Evaluated as a log-sum-exp so that large
/// |alpha| stays stable. Throws if the supports are disjoint.
inline double psi_classical(const ClassicalWeight& rho, const ClassicalWeight& sigma, double alpha) {
    if (rho.size() != sigma.size()) throw DimensionMismatchError("psi_classical: size mismatch");
    double tmax = -kInf;
    std::vector<double> terms;
    terms.reserve(rho.size());
    for (std::size_t x = 0; x < rho.size(); ++x) {
        if (rho[x] > 0.0 && sigma[x] > 0.0) {
            double t = alpha * std::log(rho[x]) + (1.0 - alpha) * std::log(sigma[x]);
            terms.push_back(t);
            tmax = std::max(tmax, t);
        }
    }
    if (terms.empty()) throw DisjointSupportError("psi_classical: disjoint supports");
    double s = 0.0;
    for (double t : terms) s += std::exp(t - tmax);
    return tmax + std::log(s);
}

struct PsiMoments {
    double psi;   // psi(alpha)
    double psi1;  // psi'(alpha)  = E_{mu_alpha}[logn rho - logn sigma]
    double psi2;  // psi''(alpha) = Var_{mu_alpha}[logn rho - logn sigma] >= 0
};

inline PsiMoments psi_moments_classical(const ClassicalWeight& rho, const ClassicalWeight& sigma,
                                        double alpha) {
    if (rho.size() != sigma.size()) throw DimensionMismatchError("psi_moments_classical: size mismatch");
    double tmax = -kInf;
    std::vector<std::pair<double, double>> terms;  // (log weight, llr)
    for (std::size_t x = 0; x < rho.size(); ++x) {
        if (rho[x] > 0.0 && sigma[x] > 0.0) {
            const double l = std::log(rho[x]) - std::log(sigma[x]);
            const double t = alpha * l + std::log(sigma[x]);
            terms.emplace_back(t, l);
            tmax = std::max(tmax, t);
        }
    }
    if (terms.empty()) throw DisjointSupportError("psi_moments_classical: disjoint supports");
    double q = 0.0, m1 = 0.0, m2 = 0.0;
    for (auto [t, l] : terms) {
        const double w = std::exp(t - tmax);
        q += w;
        m1 += w * l;
        m2 += w * l * l;
    }
    const double mean = m1 / q;
    return {tmax + std::log(q), mean, std::max(0.0, m2 / q - mean * mean)};
}

inline ExtReal rel_entropy(const ClassicalWeight& rho, const ClassicalWeight& sigma) {
    if (rho.size() != sigma.size()) throw DimensionMismatchError("rel_entropy: size mismatch");
    if (!rho.support_contained_in(sigma)) return ExtReal::infinity();
    double d = 0.0;
    for (std::size_t x = 0; x < rho.size(); ++x)
        if (rho[x] > 0.0) d += rho[x] * (std::log(rho[x]) - std::log(sigma[x]));
    return d;
}

inline ExtReal petz_renyi(const ClassicalWeight& rho, const ClassicalWeight& sigma, double alpha) {
    if (alpha < 0.0 || alpha >= 1.0) throw OutOfRangeError("petz_renyi: alpha must lie in [0,1)");
    if (rho.support_disjoint_from(sigma)) return ExtReal::infinity();
    return psi_classical(rho, sigma, alpha) / (alpha - 1.0);
}

inline ExtReal max_rel_entropy(const ClassicalWeight& rho, const ClassicalWeight& sigma) {
    if (rho.size() != sigma.size()) throw DimensionMismatchError("max_rel_entropy: size mismatch");
    if (!rho.support_contained_in(sigma)) return ExtReal::infinity();
    double m = -kInf;
    for (std::size_t x = 0; x < rho.size(); ++x)
        if (rho[x] > 0.0) m = std::max(m, std::log(rho[x]) - std::log(sigma[x]));
    return m;
}

inline ExtReal sandwiched_renyi(const ClassicalWeight& rho, const ClassicalWeight& sigma, double alpha) {
    if (!(alpha > 1.0)) throw OutOfRangeError("sandwiched_renyi: alpha must exceed 1");
    if (std::isinf(alpha)) return max_rel_entropy(rho, sigma);
    if (!rho.support_contained_in(sigma)) return ExtReal::infinity();
    return psi_classical(rho, sigma, alpha) / (alpha - 1.0);
}

/// Commuting states collapse the log-Euclidean divergence onto the Petz one.
inline double log_euclidean_renyi(const ClassicalWeight& rho, const ClassicalWeight& sigma, double alpha) {
    if (alpha <= 0.0 || alpha >= 1.0) throw OutOfRangeError("log_euclidean_renyi: alpha must lie in (0,1)");
    for (std::size_t x = 0; x < rho.size(); ++x)
        if (rho[x] <= 0.0 || sigma[x] <= 0.0)
            throw NotPdError("log_euclidean_renyi: inputs must have full support");
    return psi_classical(rho, sigma, alpha) / (alpha - 1.0);
}

inline double maximal_renyi(const ClassicalWeight& rho, const ClassicalWeight& sigma, double alpha) {
    return log_euclidean_renyi(rho, sigma, alpha);
}

// --------------------------------------------------------------------------
// quantum path
// --------------------------------------------------------------------------

/// Cached spectral data for repeated evaluations of Tr rho^a sigma^{1-a}.
struct PetzKernel {
    Eigen::VectorXd rho_eigs, sigma_eigs;
    Eigen::MatrixXd overlap;  // |<v_i|w_j>|^2
    double rho_cut = 0.0, sigma_cut = 0.0;

    double q(double alpha) const {
        double s = 0.0;
        for (int i = 0; i < rho_eigs.size(); ++i) {
            if (rho_eigs(i) <= rho_cut) continue;
            const double ra = std::pow(rho_eigs(i), alpha);
            for (int j = 0; j < sigma_eigs.size(); ++j) {
                if (sigma_eigs(j) <= sigma_cut) continue;
                s += ra * std::pow(sigma_eigs(j), 1.0 - alpha) * overlap(i, j);
            }
        }
        return s;
    }

    /// Tr rho (I - sigma^0): mass of rho outside sigma's support.
    double rho_leak() const {
        double s = 0.0;
        for (int i = 0; i < rho_eigs.size(); ++i) {
            if (rho_eigs(i) <= rho_cut) continue;
            for (int j = 0; j < sigma_eigs.size(); ++j)
                if (sigma_eigs(j) <= sigma_cut) s += rho_eigs(i) * overlap(i, j);
        }
        return s;
    }

    /// Tr rho^0 sigma^0 as an orthogonality detector.
    double support_overlap() const {
        double s = 0.0;
        for (int i = 0; i < rho_eigs.size(); ++i) {
            if (rho_eigs(i) <= rho_cut) continue;
            for (int j = 0; j < sigma_eigs.size(); ++j)
                if (sigma_eigs(j) > sigma_cut) s += overlap(i, j);
        }
        return s;
    }

    int rank_rho() const {
        int r = 0;
        for (int i = 0; i < rho_eigs.size(); ++i)
            if (rho_eigs(i) > rho_cut) ++r;
        return r;
    }

    bool supports_orthogonal(double eps_supp = herm::kSupportTol) const {
        return support_overlap() < eps_supp * std::max(1, rank_rho());
    }
};

inline PetzKernel petz_kernel(const herm::HermitianOperator& rho, const herm::HermitianOperator& sigma,
                              double eps_supp = herm::kSupportTol) {
    if (rho.dim() != sigma.dim()) throw DimensionMismatchError("petz_kernel: dimension mismatch");
    herm::EigenSystem er = herm::eig_herm(rho);
    herm::EigenSystem es = herm::eig_herm(sigma);
    herm::detail::require_psd(er.eigenvalues, eps_supp, "petz_kernel(rho)");
    herm::detail::require_psd(es.eigenvalues, eps_supp, "petz_kernel(sigma)");
    PetzKernel k;
    k.rho_eigs = er.eigenvalues;
    k.sigma_eigs = es.eigenvalues;
    Eigen::MatrixXcd inner = er.eigenvectors.adjoint() * es.eigenvectors;
    k.overlap = inner.cwiseAbs2();
    k.rho_cut = herm::detail::support_cut(er.eigenvalues, eps_supp);
    k.sigma_cut = herm::detail::support_cut(es.eigenvalues, eps_supp);
    return k;
}

inline ExtReal rel_entropy(const herm::DensityOperator& rho, const herm::HermitianOperator& sigma) {
    PetzKernel k = petz_kernel(rho.op(), sigma);
    if (k.rho_leak() > kLeakTol) return ExtReal::infinity();
    double d = 0.0;
    for (int i = 0; i < k.rho_eigs.size(); ++i)
        if (k.rho_eigs(i) > k.rho_cut) d += k.rho_eigs(i) * std::log(k.rho_eigs(i));
    for (int j = 0; j < k.sigma_eigs.size(); ++j) {
        if (k.sigma_eigs(j) <= k.sigma_cut) continue;
        double w = 0.0;  // <w_j| rho |w_j>
        for (int i = 0; i < k.rho_eigs.size(); ++i)
            if (k.rho_eigs(i) > k.rho_cut) w += k.rho_eigs(i) * k.overlap(i, j);
        d -= w * std::log(k.sigma_eigs(j));
    }
    return d;
}

inline ExtReal petz_renyi(const herm::DensityOperator& rho, const herm::HermitianOperator& sigma,
                          double alpha) {
    if (alpha < 0.0 || alpha >= 1.0) throw OutOfRangeError("petz_renyi: alpha must lie in [0,1)");
    PetzKernel k = petz_kernel(rho.op(), sigma);
    if (k.supports_orthogonal()) return ExtReal::infinity();
    return std::log(k.q(alpha)) / (alpha - 1.0);
}

inline ExtReal max_rel_entropy(const herm::DensityOperator& rho, const herm::HermitianOperator& sigma,
                               double eps_supp = herm::kSupportTol) {
    PetzKernel k = petz_kernel(rho.op(), sigma, eps_supp);
    if (k.rho_leak() > kLeakTol) return ExtReal::infinity();
    herm::SupportProjector p = herm::support_projection(sigma, eps_supp);
    if (p.rank == 0) return ExtReal::infinity();
    Eigen::MatrixXcd sc = p.basis.adjoint() * sigma.matrix() * p.basis;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ess(0.5 * (sc + sc.adjoint().eval()));
    Eigen::VectorXd inv_sqrt(ess.eigenvalues().size());
    for (int i = 0; i < inv_sqrt.size(); ++i) inv_sqrt(i) = 1.0 / std::sqrt(ess.eigenvalues()(i));
    Eigen::MatrixXcd smh = ess.eigenvectors() * inv_sqrt.asDiagonal() * ess.eigenvectors().adjoint();
    Eigen::MatrixXcd rc = p.basis.adjoint() * rho.matrix() * p.basis;
    Eigen::MatrixXcd x = smh * rc * smh;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> esx(0.5 * (x + x.adjoint().eval()));
    return std::log(esx.eigenvalues().maxCoeff());
}

inline ExtReal sandwiched_renyi(const herm::DensityOperator& rho, const herm::HermitianOperator& sigma,
                                double alpha, double eps_supp = herm::kSupportTol) {
    if (!(alpha > 1.0)) throw OutOfRangeError("sandwiched_renyi: alpha must exceed 1");
    if (std::isinf(alpha)) return max_rel_entropy(rho, sigma, eps_supp);
    PetzKernel k = petz_kernel(rho.op(), sigma, eps_supp);
    if (k.rho_leak() > kLeakTol) return ExtReal::infinity();
    herm::Matrix rh = herm::apply_on_support(rho.op(), [](double x) { return std::sqrt(x); }, eps_supp);
    const double p = (1.0 - alpha) / alpha;
    herm::Matrix sp = herm::apply_on_support(sigma, [p](double x) { return std::pow(x, p); }, eps_supp);
    herm::Matrix m = rh * sp * rh;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m + m.adjoint().eval()));
    double q = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) > 0.0) q += std::pow(es.eigenvalues()(i), alpha);
    return std::log(q) / (alpha - 1.0);
}

inline double log_euclidean_renyi(const herm::DensityOperator& rho, const herm::HermitianOperator& sigma,
                                  double alpha, double eps_supp = herm::kSupportTol) {
    if (alpha <= 0.0 || alpha >= 1.0) throw OutOfRangeError("log_euclidean_renyi: alpha must lie in (0,1)");
    if (!herm::is_positive_definite(rho.op(), eps_supp) || !herm::is_positive_definite(sigma, eps_supp))
        throw NotPdError("log_euclidean_renyi: both arguments must be positive definite");
    herm::Matrix l = alpha * herm::mat_log_on_support(rho.op(), eps_supp).matrix() +
                     (1.0 - alpha) * herm::mat_log_on_support(sigma, eps_supp).matrix();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (l + l.adjoint().eval()));
    double q = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) q += std::exp(es.eigenvalues()(i));
    return std::log(q) / (alpha - 1.0);
}

inline double maximal_renyi(const herm::DensityOperator& rho, const herm::HermitianOperator& sigma,
                            double alpha, double eps_supp = herm::kSupportTol) {
    if (alpha <= 0.0 || alpha >= 1.0) throw OutOfRangeError("maximal_renyi: alpha must lie in (0,1)");
    herm::HermitianOperator g = herm::geometric_mean(rho.op(), sigma, alpha, eps_supp);
    return std::log(g.trace()) / (alpha - 1.0);
}

// --------------------------------------------------------------------------
// Chernoff divergence: C = -min_{alpha in (0,1)} psi(alpha)
// --------------------------------------------------------------------------

inline constexpr double kChernoffDelta = 1e-6;
inline constexpr double kChernoffAlphaTol = 1e-10;

inline ExtReal chernoff(const ClassicalWeight& rho, const ClassicalWeight& sigma) {
    if (rho.support_disjoint_from(sigma)) return ExtReal::infinity();
    auto psi = [&](double a) { return psi_classical(rho, sigma, a); };
    ScalarOpt m = golden_min(psi, kChernoffDelta, 1.0 - kChernoffDelta, kChernoffAlphaTol);
    // refine by bisection on the derivative sign when the optimum is interior
    double lo = std::max(kChernoffDelta, m.x - 1e-4);
    double hi = std::min(1.0 - kChernoffDelta, m.x + 1e-4);
    auto d1 = [&](double a) { return psi_moments_classical(rho, sigma, a).psi1; };
    if (d1(lo) < 0.0 && d1(hi) > 0.0) {
        double a = bisect_root(d1, lo, hi, kChernoffAlphaTol);
        m = {a, psi(a)};
    }
    return std::max(0.0, -std::min({m.value, psi(kChernoffDelta), psi(1.0 - kChernoffDelta)}));
}

inline ExtReal chernoff(const herm::DensityOperator& rho, const herm::HermitianOperator& sigma) {
    PetzKernel k = petz_kernel(rho.op(), sigma);
    if (k.supports_orthogonal()) return ExtReal::infinity();
    auto psi = [&](double a) { return std::log(k.q(a)); };
    ScalarOpt m = golden_min(psi, kChernoffDelta, 1.0 - kChernoffDelta, kChernoffAlphaTol);
    return std::max(0.0, -std::min({m.value, psi(kChernoffDelta), psi(1.0 - kChernoffDelta)}));
}

// --------------------------------------------------------------------------
// psi / psi-tilde evaluators
// --------------------------------------------------------------------------

/// Classical psi for both families (they coincide for commuting states);
/// defined for any real alpha on the intersection support.
inline ExtReal psi_eval(const ClassicalWeight& rho, const ClassicalWeight& sigma, double alpha,
                        Family = Family::petz) {
    return psi_classical(rho, sigma, alpha);
}

inline ExtReal psi_eval(const herm::DensityOperator& rho, const herm::HermitianOperator& sigma,
                        double alpha, Family family) {
    if (family == Family::petz) {
        if (alpha < 0.0 || alpha > 1.0)
            throw OutOfRangeError("psi_eval(petz): alpha must lie in [0,1]");
        PetzKernel k = petz_kernel(rho.op(), sigma);
        double q = k.q(alpha);  // alpha = 1 gives Tr rho sigma^0
        if (q <= 0.0) return -kInf;
        return std::log(q);
    }
    if (alpha < 1.0) throw OutOfRangeError("psi_eval(sandwiched): alpha must be >= 1");
    if (alpha == 1.0) {
        PetzKernel k = petz_kernel(rho.op(), sigma);
        return k.rho_leak() > kLeakTol ? ExtReal::infinity() : ExtReal(0.0);
    }
    ExtReal d = sandwiched_renyi(rho, sigma, alpha);
    if (d.is_pos_inf()) return ExtReal::infinity();
    return (alpha - 1.0) * d;
}

/// psi_tilde(u) = (1-u) psi(1/(1-u)); the u = 1 endpoint is D_infty.
template <class Rho, class Sigma>
ExtReal psi_tilde_eval(const Rho& rho, const Sigma& sigma, double u, Family family) {
    if (u >= 1.0) {
        if (u > 1.0) throw OutOfRangeError("psi_tilde_eval: u must be <= 1");
        return max_rel_entropy(rho, sigma);
    }
    ExtReal p = psi_eval(rho, sigma, 1.0 / (1.0 - u), family);
    if (!p.finite()) return p;
    return (1.0 - u) * p;
}

// --------------------------------------------------------------------------
// dispatch by named kind (CLI / composite scans)
// --------------------------------------------------------------------------

enum class DivKind { relative, petz, sandwiched, log_euclidean, maximal, max_rel, chernoff };

struct DivergenceValue {
    DivKind kind;
    double alpha;  // meaningful for the alpha families
    ExtReal value;
};

template <class Rho, class Sigma>
DivergenceValue evaluate(DivKind kind, double alpha, const Rho& rho, const Sigma& sigma) {
    switch (kind) {
        case DivKind::relative: return {kind, 1.0, rel_entropy(rho, sigma)};
        case DivKind::petz: return {kind, alpha, petz_renyi(rho, sigma, alpha)};
        case DivKind::sandwiched: return {kind, alpha, sandwiched_renyi(rho, sigma, alpha)};
        case DivKind::log_euclidean: return {kind, alpha, log_euclidean_renyi(rho, sigma, alpha)};
        case DivKind::maximal: return {kind, alpha, maximal_renyi(rho, sigma, alpha)};
        case DivKind::max_rel: return {kind, kInf, max_rel_entropy(rho, sigma)};
        case DivKind::chernoff: return {kind, 0.0, chernoff(rho, sigma)};
    }
    throw OutOfRangeError("evaluate: unknown divergence kind");
}

} // namespace explab::divergence
