// composite.hpp — set-to-set divergences over finite hypothesis sets,
// Frank–Wolfe minimization of the Hoeffding divergence over convex hulls of
// classical generators, first-order optimality certificates, and the
// geometric-mean bounds for a two-state alternative hypothesis.

#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "explab/classical.hpp"
#include "explab/divergence.hpp"
#include "explab/errors.hpp"
#include "explab/extreal.hpp"
#include "explab/hermitian.hpp"
#include "explab/scalar_opt.hpp"
#include "explab/tradeoff.hpp"

namespace explab::composite {

/// Finite hypothesis set; all members classical or all quantum.
struct HypothesisSet {
    std::string label;
    std::vector<ClassicalWeight> classical;
    std::vector<herm::DensityOperator> quantum;

    bool is_classical() const { return !classical.empty(); }
    std::size_t size() const { return is_classical() ? classical.size() : quantum.size(); }

    void validate() const {
        if (classical.empty() == quantum.empty())
            throw DimensionMismatchError("HypothesisSet: exactly one state kind must be populated");
    }
};

inline HypothesisSet make_classical_set(std::string label, std::vector<ClassicalWeight> states) {
    HypothesisSet h;
    h.label = std::move(label);
    h.classical = std::move(states);
    h.validate();
    return h;
}

inline HypothesisSet make_quantum_set(std::string label, std::vector<herm::DensityOperator> states) {
    HypothesisSet h;
    h.label = std::move(label);
    h.quantum = std::move(states);
    h.validate();
    return h;
}

/// E(R||S) = min over generator pairs; exact for finite sets.
inline ExtReal set_divergence(divergence::DivKind kind, double alpha, const HypothesisSet& r,
                              const HypothesisSet& s) {
    r.validate();
    s.validate();
    if (r.is_classical() != s.is_classical())
        throw DimensionMismatchError("set_divergence: mixed classical/quantum sets");
    ExtReal best = ExtReal::infinity();
    if (r.is_classical()) {
        for (const auto& rho : r.classical)
            for (const auto& sigma : s.classical)
                best = std::min(best, divergence::evaluate(kind, alpha, rho, sigma).value);
    } else {
        for (const auto& rho : r.quantum)
            for (const auto& sigma : s.quantum)
                best = std::min(best, divergence::evaluate(kind, alpha, rho, sigma.op()).value);
    }
    return best;
}

struct AntiDivergenceReport {
    double value = 0.0;                              // sup of pairwise H*_r over admissible pairs
    std::pair<int, int> argmax{-1, -1};
    std::vector<std::pair<int, int>> skipped_pairs;  // D_infty = +inf, excluded from the sup
    std::vector<double> alpha_grid;
    std::vector<ExtReal> d_star_alpha;               // D*_alpha(R||S) = min pairwise, per grid point
};

/// H*_r(R||S) = sup over pairs; pairs with infinite max-relative entropy are
/// reported and excluded. Also evaluates D*_alpha(R||S) on a requested grid.
inline AntiDivergenceReport set_anti_divergence(double r, const HypothesisSet& rset,
                                                const HypothesisSet& sset,
                                                const std::vector<double>& alpha_grid = {}) {
    rset.validate();
    sset.validate();
    if (rset.is_classical() != sset.is_classical())
        throw DimensionMismatchError("set_anti_divergence: mixed classical/quantum sets");
    AntiDivergenceReport rep;
    rep.value = -kInf;
    auto consider = [&](int i, int j, double v) {
        if (v > rep.value) {
            rep.value = v;
            rep.argmax = {i, j};
        }
    };
    if (rset.is_classical()) {
        for (std::size_t i = 0; i < rset.classical.size(); ++i)
            for (std::size_t j = 0; j < sset.classical.size(); ++j) {
                if (!rset.classical[i].support_contained_in(sset.classical[j])) {
                    rep.skipped_pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
                    continue;
                }
                consider(static_cast<int>(i), static_cast<int>(j),
                         tradeoff::hoeffding_anti(rset.classical[i], sset.classical[j], r));
            }
    } else {
        for (std::size_t i = 0; i < rset.quantum.size(); ++i)
            for (std::size_t j = 0; j < sset.quantum.size(); ++j) {
                auto k = divergence::petz_kernel(rset.quantum[i].op(), sset.quantum[j].op());
                if (k.rho_leak() > divergence::kLeakTol) {
                    rep.skipped_pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
                    continue;
                }
                consider(static_cast<int>(i), static_cast<int>(j),
                         tradeoff::hoeffding_anti(rset.quantum[i], sset.quantum[j].op(), r));
            }
    }
    if (rep.argmax.first < 0)
        throw SupportMismatchError("set_anti_divergence: every pair has infinite max-relative entropy");
    for (double a : alpha_grid) {
        rep.alpha_grid.push_back(a);
        rep.d_star_alpha.push_back(set_divergence(divergence::DivKind::sandwiched, a, rset, sset));
    }
    return rep;
}

// --------------------------------------------------------------------------
// Frank–Wolfe minimization of H_r over co(R) x co(S), classical generators
// --------------------------------------------------------------------------

struct SolverConfig {
    int max_iters = 2000;
    // The certificate slack on the alternative side scales like
    // alpha/(1-alpha) times the FW gap, so the stop tolerance sits well below
    // the 1e-8 slack target.
    double fw_gap_tol = 1e-11;
    double smoothing_theta = 1e-6;  // applied only when a generator lacks full support
    double alpha_bracket = 1e-9;
};

struct MinimizerPair {
    std::vector<double> rho_weights;    // convex coefficients over the (smoothed) R generators
    std::vector<double> sigma_weights;
    ClassicalWeight rho_star;
    ClassicalWeight sigma_star;
    double value;        // H_r at the minimizer
    double alpha_star;   // maximizing alpha of the inner supremum
    double theta;        // smoothing actually applied (0 when not needed)
    bool converged;
    double fw_gap;
    int iterations;
};

namespace detail {

struct HrEval {
    double value;
    double alpha;  // argmax in (0,1), or 1.0 when the supremum sits at the boundary
};

/// H_r of a full-support classical pair together with the inner maximizer.
inline HrEval hoeffding_with_argmax(const ClassicalWeight& rho, const ClassicalWeight& sigma,
                                    double r, double delta = 1e-9) {
    auto f = [&](double a) {
        return ((a - 1.0) * r - divergence::psi_classical(rho, sigma, a)) / a;
    };
    ScalarOpt m = golden_max(f, delta, 1.0 - delta, 1e-12);
    const double boundary = -divergence::psi_classical(rho, sigma, 1.0);
    if (boundary >= m.value) return {boundary, 1.0};
    return {m.value, m.x};
}

} // namespace detail

/// Minimize H_r over co(R) x co(S) by Frank–Wolfe with exact line search on
/// the simplex weights. The objective is jointly convex, so the FW gap bounds
/// the suboptimality. Smoothing theta is applied to every generator when any
/// one of them lacks full support; the applied theta is reported.
inline MinimizerPair minimize_Hr_over_hulls(const HypothesisSet& rset, const HypothesisSet& sset,
                                            double r, const SolverConfig& cfg = {}) {
    rset.validate();
    sset.validate();
    if (!rset.is_classical() || !sset.is_classical())
        throw DimensionMismatchError("minimize_Hr_over_hulls: classical sets required");
    std::vector<ClassicalWeight> rs = rset.classical, ss = sset.classical;
    double theta = 0.0;
    auto full_support = [](const ClassicalWeight& w) { return w.support().size() == w.size(); };
    bool need_smoothing = false;
    for (const auto& w : rs) need_smoothing |= !full_support(w);
    for (const auto& w : ss) need_smoothing |= !full_support(w);
    if (need_smoothing) {
        theta = cfg.smoothing_theta;
        for (auto& w : rs) w = smooth(w, theta);
        for (auto& w : ss) w = smooth(w, theta);
    }

    const std::size_t k = rs.size(), m = ss.size();
    std::vector<double> a(k, 1.0 / static_cast<double>(k));
    std::vector<double> b(m, 1.0 / static_cast<double>(m));

    auto objective = [&](const std::vector<double>& aw, const std::vector<double>& bw) {
        return detail::hoeffding_with_argmax(mix(rs, aw), mix(ss, bw), r, cfg.alpha_bracket);
    };

    detail::HrEval cur = objective(a, b);
    double gap = kInf;
    bool converged = false;
    int it = 0;
    for (; it < cfg.max_iters; ++it) {
        ClassicalWeight rho_a = mix(rs, a), sigma_b = mix(ss, b);
        const double alpha = cur.alpha;
        // Danskin gradients through the inner maximizer:
        //   dF/drho(x)   = -(sigma/rho)^{1-alpha} / Q
        //   dF/dsigma(x) = u (rho/sigma)^{alpha} / Q,  u = (alpha-1)/alpha
        double q = std::exp(divergence::psi_classical(rho_a, sigma_b, alpha));
        const double u = (alpha - 1.0) / alpha;
        std::vector<double> grad_a(k, 0.0), grad_b(m, 0.0);
        for (std::size_t i = 0; i < k; ++i) {
            double g = 0.0;
            for (std::size_t x = 0; x < rho_a.size(); ++x)
                g -= rs[i][x] * std::pow(sigma_b[x] / rho_a[x], 1.0 - alpha);
            grad_a[i] = g / q;
        }
        for (std::size_t j = 0; j < m; ++j) {
            double g = 0.0;
            for (std::size_t x = 0; x < sigma_b.size(); ++x)
                g += ss[j][x] * std::pow(rho_a[x] / sigma_b[x], alpha);
            grad_b[j] = u * g / q;
        }
        std::size_t istar = 0, jstar = 0;
        for (std::size_t i = 1; i < k; ++i)
            if (grad_a[i] < grad_a[istar]) istar = i;
        for (std::size_t j = 1; j < m; ++j)
            if (grad_b[j] < grad_b[jstar]) jstar = j;
        double ga = 0.0, gb = 0.0;
        for (std::size_t i = 0; i < k; ++i) ga += grad_a[i] * a[i];
        for (std::size_t j = 0; j < m; ++j) gb += grad_b[j] * b[j];
        gap = (ga - grad_a[istar]) + (gb - grad_b[jstar]);
        if (gap < cfg.fw_gap_tol) {
            converged = true;
            break;
        }
        // pairwise steps, one block at a time: shift mass from the worst
        // active vertex toward the FW vertex with an exact line search
        auto block_step = [&](std::vector<double>& w, const std::vector<double>& grad,
                              std::size_t toward, bool is_null_block) {
            std::size_t away = toward;
            for (std::size_t i = 0; i < w.size(); ++i)
                if (w[i] > 0.0 && grad[i] > grad[away]) away = i;
            const double tmax = (away == toward) ? 0.0 : w[away];
            if (tmax <= 0.0) return;
            auto phi = [&](double t) {
                std::vector<double> wt = w;
                wt[away] -= t * tmax;
                wt[toward] += t * tmax;
                return is_null_block ? objective(wt, b).value : objective(a, wt).value;
            };
            ScalarOpt step = golden_min(phi, 0.0, 1.0, 1e-12);
            w[away] -= step.x * tmax;
            w[toward] += step.x * tmax;
            w[away] = std::max(0.0, w[away]);
        };
        block_step(a, grad_a, istar, true);
        block_step(b, grad_b, jstar, false);
        double sa = 0.0, sb = 0.0;
        for (double w : a) sa += w;
        for (double w : b) sb += w;
        for (auto& w : a) w /= sa;
        for (auto& w : b) w /= sb;
        cur = objective(a, b);
    }
    ClassicalWeight rho_star = mix(rs, a), sigma_star = mix(ss, b);
    return MinimizerPair{std::move(a), std::move(b), std::move(rho_star), std::move(sigma_star),
                         cur.value, cur.alpha, theta, converged, gap, it};
}

// --------------------------------------------------------------------------
// first-order optimality certificates (the LLR-lower inequalities)
// --------------------------------------------------------------------------

struct CertificateReport {
    bool pass = true;
    double worst_slack = kInf;
    int worst_generator = -1;
    bool worst_on_null_side = true;
    std::vector<double> slacks_null;  // rhs - lhs per R generator, >= -tol required
    std::vector<double> slacks_alt;
};

/// Checks, for every generator rho of R_theta and sigma of S_theta:
///   sum_x rho(x)   (sigma_r/rho_r)^{1-alpha_r} <= sum_x rho_r(x)   (sigma_r/rho_r)^{1-alpha_r}
///   sum_x sigma(x) (rho_r/sigma_r)^{alpha_r}   <= sum_x sigma_r(x) (rho_r/sigma_r)^{alpha_r}
inline CertificateReport optimality_certificate(const MinimizerPair& pair, const HypothesisSet& rset,
                                                const HypothesisSet& sset, double tol = 1e-8) {
    rset.validate();
    sset.validate();
    if (!rset.is_classical() || !sset.is_classical())
        throw DimensionMismatchError("optimality_certificate: classical sets required");
    std::vector<ClassicalWeight> rs = rset.classical, ss = sset.classical;
    if (pair.theta > 0.0) {
        for (auto& w : rs) w = smooth(w, pair.theta);
        for (auto& w : ss) w = smooth(w, pair.theta);
    }
    const ClassicalWeight& rr = pair.rho_star;
    const ClassicalWeight& sr = pair.sigma_star;
    const double alpha = pair.alpha_star;
    const std::size_t n = rr.size();
    std::vector<double> wr(n), ws(n);
    for (std::size_t x = 0; x < n; ++x) {
        wr[x] = std::pow(sr[x] / rr[x], 1.0 - alpha);
        ws[x] = std::pow(rr[x] / sr[x], alpha);
    }
    double rhs_null = 0.0, rhs_alt = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        rhs_null += rr[x] * wr[x];
        rhs_alt += sr[x] * ws[x];
    }
    CertificateReport rep;
    auto record = [&](double slack, int idx, bool null_side, std::vector<double>& into) {
        into.push_back(slack);
        if (slack < rep.worst_slack) {
            rep.worst_slack = slack;
            rep.worst_generator = idx;
            rep.worst_on_null_side = null_side;
        }
        if (slack < -tol) rep.pass = false;
    };
    for (std::size_t i = 0; i < rs.size(); ++i) {
        double lhs = 0.0;
        for (std::size_t x = 0; x < n; ++x) lhs += rs[i][x] * wr[x];
        record(rhs_null - lhs, static_cast<int>(i), true, rep.slacks_null);
    }
    for (std::size_t j = 0; j < ss.size(); ++j) {
        double lhs = 0.0;
        for (std::size_t x = 0; x < n; ++x) lhs += ss[j][x] * ws[x];
        record(rhs_alt - lhs, static_cast<int>(j), false, rep.slacks_alt);
    }
    return rep;
}

inline void require_certificate(const CertificateReport& rep) {
    if (!rep.pass)
        throw CertificateError("optimality certificate failed: worst slack " +
                               std::to_string(rep.worst_slack) + " at generator " +
                               std::to_string(rep.worst_generator) +
                               (rep.worst_on_null_side ? " (null side)" : " (alternative side)"));
}

// --------------------------------------------------------------------------
// geometric-mean bounds for a two-state alternative hypothesis
// --------------------------------------------------------------------------

struct GeomMeanBoundsReport {
    double lambda;                     // Tr(sigma1 # sigma2)
    ExtReal stein_bound;               // D(R || sigma1#sigma2) >= s(R||{sigma1,sigma2})
    ExtReal pairwise_stein;            // min_{rho, j} D(rho||sigma_j)
    std::vector<double> r_grid;
    std::vector<ExtReal> hoeffding_bound;    // H_r(R || sigma1#sigma2)
    std::vector<ExtReal> pairwise_hoeffding; // min pairwise H_r
};

inline GeomMeanBoundsReport geommean_composite_bounds(const HypothesisSet& rset,
                                                      const herm::DensityOperator& sigma1,
                                                      const herm::DensityOperator& sigma2,
                                                      const std::vector<double>& r_grid) {
    rset.validate();
    if (rset.is_classical())
        throw DimensionMismatchError("geommean_composite_bounds: quantum null set required");
    herm::HermitianOperator g = herm::geometric_mean(sigma1.op(), sigma2.op());
    GeomMeanBoundsReport rep;
    rep.lambda = g.trace();
    rep.stein_bound = ExtReal::infinity();
    rep.pairwise_stein = ExtReal::infinity();
    for (const auto& rho : rset.quantum) {
        rep.stein_bound = std::min(rep.stein_bound, divergence::rel_entropy(rho, g));
        rep.pairwise_stein = std::min(rep.pairwise_stein, divergence::rel_entropy(rho, sigma1.op()));
        rep.pairwise_stein = std::min(rep.pairwise_stein, divergence::rel_entropy(rho, sigma2.op()));
    }
    rep.r_grid = r_grid;
    for (double r : r_grid) {
        ExtReal hb = ExtReal::infinity(), hp = ExtReal::infinity();
        for (const auto& rho : rset.quantum) {
            hb = std::min(hb, tradeoff::hoeffding(rho, g, r));
            hp = std::min(hp, tradeoff::hoeffding(rho, sigma1.op(), r));
            hp = std::min(hp, tradeoff::hoeffding(rho, sigma2.op(), r));
        }
        rep.hoeffding_bound.push_back(hb);
        rep.pairwise_hoeffding.push_back(hp);
    }
    return rep;
}

} // namespace explab::composite
