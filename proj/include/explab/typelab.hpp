// typelab.hpp — exact finite-n classical machinery: type enumeration and
// combinatorics, permutation-symmetric tests (Neyman–Pearson, relative-entropy
// ball), the halfspace type-rounding algorithm, max-min and projectivization
// combiners, and the adversarial product-strategy error bounds.
//
// Error probabilities are accumulated in log space with compensated summation;
// beta ~ e^{-nr} underflows plain sums long before n gets interesting.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "explab/classical.hpp"
#include "explab/composite.hpp"
#include "explab/divergence.hpp"
#include "explab/errors.hpp"
#include "explab/extreal.hpp"

namespace explab::typelab {

inline constexpr std::size_t kTypeCap = 10'000'000;

/// Composition of n over a finite alphabet.
struct TypeVector {
    std::vector<int> counts;

    int n() const {
        int s = 0;
        for (int c : counts) s += c;
        return s;
    }

    ClassicalWeight empirical() const {
        const double nn = static_cast<double>(n());
        std::vector<double> w(counts.size());
        for (std::size_t i = 0; i < counts.size(); ++i) w[i] = counts[i] / nn;
        return ClassicalWeight(std::move(w));
    }
};

/// Number of compositions of n into m parts: C(n+m-1, m-1).
inline std::uint64_t composition_count(int n, int m) {
    if (m <= 0) return n == 0 ? 1 : 0;
    std::uint64_t r = 1;
    for (int i = 1; i < m; ++i) {
        r = r * static_cast<std::uint64_t>(n + i);
        r /= static_cast<std::uint64_t>(i);
    }
    return r;
}

/// All n-types over the alphabet, lexicographic with the first coordinate
/// descending: (n,0,...), ..., (0,...,n).
inline std::vector<TypeVector> enumerate_types(int n, int alphabet, std::size_t cap = kTypeCap) {
    if (n < 0 || alphabet < 1) throw OutOfRangeError("enumerate_types: need n >= 0 and alphabet >= 1");
    if (composition_count(n, alphabet) > cap)
        throw CapExceededError("enumerate_types: type count exceeds cap");
    std::vector<TypeVector> out;
    out.reserve(composition_count(n, alphabet));
    std::vector<int> cur(alphabet, 0);
    auto rec = [&](auto&& self, int pos, int rem) -> void {
        if (pos == alphabet - 1) {
            cur[pos] = rem;
            out.push_back(TypeVector{cur});
            return;
        }
        for (int c = rem; c >= 0; --c) {
            cur[pos] = c;
            self(self, pos + 1, rem - c);
        }
    };
    rec(rec, 0, n);
    return out;
}

/// Rank of a type in the enumerate_types order.
inline std::size_t type_rank(const TypeVector& t) {
    const int m = static_cast<int>(t.counts.size());
    int rem = t.n();
    std::uint64_t rank = 0;
    for (int pos = 0; pos < m - 1; ++pos) {
        for (int c = rem; c > t.counts[pos]; --c)
            rank += composition_count(rem - c, m - 1 - pos);
        rem -= t.counts[pos];
    }
    return static_cast<std::size_t>(rank);
}

struct TypeStats {
    double log_class_size;  // log multinomial coefficient
    double log_prob;        // log p^{(x)n}(type class); -inf when impossible
};

inline TypeStats type_stats(const ClassicalWeight& p, const TypeVector& t) {
    if (p.size() != t.counts.size()) throw DimensionMismatchError("type_stats: alphabet mismatch");
    const int n = t.n();
    double log_size = std::lgamma(n + 1.0);
    double log_prob_word = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        log_size -= std::lgamma(t.counts[i] + 1.0);
        if (t.counts[i] > 0) {
            if (p[i] <= 0.0) {
                log_prob_word = -kInf;
            } else if (log_prob_word > -kInf) {
                log_prob_word += t.counts[i] * std::log(p[i]);
            }
        }
    }
    return {log_size, log_size + log_prob_word};
}

// --------------------------------------------------------------------------
// permutation-symmetric tests
// --------------------------------------------------------------------------

/// Test given by per-type acceptance weights in [0,1]; accepting means
/// deciding the null hypothesis.
class SymmetricTest {
public:
    SymmetricTest(int n, int alphabet, std::vector<double> accept)
        : n_(n), alphabet_(alphabet), accept_(std::move(accept)) {
        if (accept_.size() != composition_count(n, alphabet))
            throw DimensionMismatchError("SymmetricTest: acceptance size does not match type count");
        for (double a : accept_)
            if (a < 0.0 || a > 1.0)
                throw OutOfRangeError("SymmetricTest: acceptance weights must lie in [0,1]");
    }

    int n() const { return n_; }
    int alphabet() const { return alphabet_; }
    std::size_t num_types() const { return accept_.size(); }
    double accept(std::size_t rank) const { return accept_[rank]; }
    double accept(const TypeVector& t) const { return accept_[type_rank(t)]; }
    const std::vector<double>& acceptance() const { return accept_; }

private:
    int n_;
    int alphabet_;
    std::vector<double> accept_;
};

struct ErrorPair {
    double alpha;      // worst-case type I
    double beta;       // worst-case type II
    double log_alpha;  // -inf when the error is exactly zero
    double log_beta;
};

namespace detail {

struct LogSum {
    double max_term = -kInf;
    std::vector<double> terms;

    void add(double log_term) {
        if (log_term == -kInf) return;
        terms.push_back(log_term);
        max_term = std::max(max_term, log_term);
    }

    double value() const {  // compensated summation of exp(term - max)
        if (terms.empty()) return -kInf;
        double s = 0.0, comp = 0.0;
        for (double t : terms) {
            double y = std::exp(t - max_term) - comp;
            double u = s + y;
            comp = (u - s) - y;
            s = u;
        }
        return max_term + std::log(s);
    }
};

} // namespace detail

/// Exact worst-case errors of a symmetric test against finite state lists;
/// alpha maximizes over the null list, beta over the alternative list.
inline ErrorPair exact_errors(const SymmetricTest& test, std::span<const ClassicalWeight> nulls,
                              std::span<const ClassicalWeight> alts) {
    auto types = enumerate_types(test.n(), test.alphabet());
    double log_alpha = -kInf, log_beta = -kInf;
    for (const auto& p : nulls) {
        detail::LogSum acc;
        for (std::size_t t = 0; t < types.size(); ++t) {
            const double rej = 1.0 - test.accept(t);
            if (rej <= 0.0) continue;
            double lp = type_stats(p, types[t]).log_prob;
            if (lp > -kInf) acc.add(lp + std::log(rej));
        }
        log_alpha = std::max(log_alpha, acc.value());
    }
    for (const auto& q : alts) {
        detail::LogSum acc;
        for (std::size_t t = 0; t < types.size(); ++t) {
            const double a = test.accept(t);
            if (a <= 0.0) continue;
            double lp = type_stats(q, types[t]).log_prob;
            if (lp > -kInf) acc.add(lp + std::log(a));
        }
        log_beta = std::max(log_beta, acc.value());
    }
    auto clamp01 = [](double x) { return std::min(1.0, std::max(0.0, x)); };
    return {clamp01(std::exp(log_alpha)), clamp01(std::exp(log_beta)), log_alpha, log_beta};
}

/// Neyman–Pearson test: accept a type iff the per-copy log-likelihood ratio
/// (1/n) sum_i k_i (logn rho_i - logn sigma_i) is >= c. Symbols outside
/// supp(rho) force rejection; symbols outside supp(sigma) force acceptance.
inline SymmetricTest np_test(const ClassicalWeight& rho, const ClassicalWeight& sigma, double c,
                             int n, std::size_t cap = kTypeCap) {
    if (rho.size() != sigma.size()) throw DimensionMismatchError("np_test: alphabet mismatch");
    auto types = enumerate_types(n, static_cast<int>(rho.size()), cap);
    std::vector<double> accept(types.size(), 0.0);
    for (std::size_t t = 0; t < types.size(); ++t) {
        double llr = 0.0;
        bool pos = false, neg = false;
        for (std::size_t i = 0; i < rho.size(); ++i) {
            if (types[t].counts[i] == 0) continue;
            const bool rp = rho[i] > 0.0, sp = sigma[i] > 0.0;
            if (rp && sp)
                llr += types[t].counts[i] * (std::log(rho[i]) - std::log(sigma[i]));
            else if (rp && !sp)
                pos = true;
            else if (!rp && sp)
                neg = true;
        }
        if (neg)
            accept[t] = 0.0;
        else if (pos)
            accept[t] = 1.0;
        else
            accept[t] = (llr / n >= c) ? 1.0 : 0.0;
    }
    return SymmetricTest(n, static_cast<int>(rho.size()), std::move(accept));
}

/// Relative-entropy ball test B_{n,r}: keep H0 on types with
/// D(type/n || sigma) >= r; boundary ties within 1e-12 stay accepted.
inline SymmetricTest ball_test(const ClassicalWeight& sigma, double r, int n,
                               std::size_t cap = kTypeCap) {
    if (r < 0.0) throw OutOfRangeError("ball_test: r must be nonnegative");
    auto types = enumerate_types(n, static_cast<int>(sigma.size()), cap);
    std::vector<double> accept(types.size(), 0.0);
    for (std::size_t t = 0; t < types.size(); ++t) {
        ExtReal d = divergence::rel_entropy(types[t].empirical(), sigma);
        accept[t] = (d.is_pos_inf() || d.value() >= r - 1e-12) ? 1.0 : 0.0;
    }
    return SymmetricTest(n, static_cast<int>(sigma.size()), std::move(accept));
}

// --------------------------------------------------------------------------
// halfspace type rounding
// --------------------------------------------------------------------------

/// Round rho in the halfspace { sum v(x) f(x) >= c } to an n-type rho_n with
/// rho_n^0 <= rho^0, still inside the halfspace, and
/// ||rho - rho_n||_1 <= 2(r-1)/n where r = |supp rho|. Requires n >= r(r-1).
/// Ceiling goes to the symbols with v above the pivot's value; the pivot is a
/// symbol of maximal mass, which takes the remainder.
inline TypeVector type_round_halfspace(const ClassicalWeight& rho, const std::vector<double>& v,
                                       double c, int n) {
    if (v.size() != rho.size()) throw DimensionMismatchError("type_round_halfspace: size mismatch");
    if (!rho.normalized()) throw NotPsdError("type_round_halfspace: rho must be normalized");
    auto supp = rho.support();
    const int r = static_cast<int>(supp.size());
    if (r == 0) throw ZeroOperatorError("type_round_halfspace: empty support");
    if (n < r * (r - 1)) throw NTooSmallError("type_round_halfspace: need n >= r(r-1)");
    {
        double dot = 0.0;
        for (std::size_t x = 0; x < rho.size(); ++x) dot += v[x] * rho[x];
        if (dot < c - 1e-12)
            throw OutOfRangeError("type_round_halfspace: rho does not satisfy the halfspace constraint");
    }
    std::size_t pivot = supp[0];
    for (std::size_t x : supp)
        if (rho[x] > rho[pivot]) pivot = x;
    std::vector<int> k(rho.size(), 0);
    long long assigned = 0;
    for (std::size_t x : supp) {
        if (x == pivot) continue;
        const double nx = n * rho[x];
        k[x] = (v[x] > v[pivot]) ? static_cast<int>(std::ceil(nx)) : static_cast<int>(std::floor(nx));
        assigned += k[x];
    }
    k[pivot] = static_cast<int>(n - assigned);
    if (k[pivot] < 0) throw NTooSmallError("type_round_halfspace: pivot count went negative");
    return TypeVector{std::move(k)};
}

// --------------------------------------------------------------------------
// test combiners
// --------------------------------------------------------------------------

/// T = max_i min_j T_{ij} per type; guarantees I - T <= sum_j (I - T_{ij}) for
/// every i and T <= sum_i T_{ij} for every j.
inline SymmetricTest maxmin_combine(int k, int m, std::span<const SymmetricTest> grid) {
    if (k < 1 || m < 1 || grid.size() != static_cast<std::size_t>(k * m))
        throw DimensionMismatchError("maxmin_combine: grid shape mismatch");
    const int n = grid[0].n(), alphabet = grid[0].alphabet();
    for (const auto& t : grid)
        if (t.n() != n || t.alphabet() != alphabet)
            throw DimensionMismatchError("maxmin_combine: tests disagree on (n, alphabet)");
    std::vector<double> accept(grid[0].num_types());
    for (std::size_t t = 0; t < accept.size(); ++t) {
        double best = 0.0;
        for (int i = 0; i < k; ++i) {
            double worst = 1.0;
            for (int j = 0; j < m; ++j) worst = std::min(worst, grid[i * m + j].accept(t));
            best = std::max(best, worst);
        }
        accept[t] = best;
    }
    return SymmetricTest(n, alphabet, std::move(accept));
}

/// Threshold at 1/2: Q <= 2T and I - Q <= 2(I - T) hold per type.
inline SymmetricTest projectivize(const SymmetricTest& t) {
    std::vector<double> accept(t.num_types());
    for (std::size_t i = 0; i < accept.size(); ++i) accept[i] = t.accept(i) >= 0.5 ? 1.0 : 0.0;
    return SymmetricTest(t.n(), t.alphabet(), std::move(accept));
}

inline composite::HypothesisSet smooth_set(const composite::HypothesisSet& s, double theta) {
    s.validate();
    if (!s.is_classical()) throw DimensionMismatchError("smooth_set: classical set required");
    composite::HypothesisSet out;
    out.label = s.label;
    for (const auto& w : s.classical) out.classical.push_back(smooth(w, theta));
    return out;
}

// --------------------------------------------------------------------------
// adversarial product-strategy bounds
// --------------------------------------------------------------------------

struct AdversarialConfig {
    std::size_t exhaustive_cap = 100'000;
    int random_strategies = 200;
    unsigned seed = 0;
};

struct AdversarialReport {
    int n = 0;
    double r = 0.0;
    double c = 0.0;          // NP threshold c_r = psi'(alpha_r)
    double alpha_star = 1.0;
    double theta = 0.0;
    double beta_bound = 0.0;   // e^{-n (r + log(1-theta))}
    double alpha_bound = 0.0;  // e^{-n (H_r + log(1-theta))}
    double worst_beta = 0.0;
    double worst_alpha = 0.0;
    std::vector<int> worst_beta_strategy;
    std::vector<int> worst_alpha_strategy;
    std::size_t beta_strategies = 0;
    std::size_t alpha_strategies = 0;
    bool beta_exhaustive = false;
    bool alpha_exhaustive = false;
    bool pass = false;
};

namespace detail {

/// Exact type-class distribution of a product of per-coordinate states, by
/// dynamic programming over prefix counts.
inline std::vector<double> product_type_distribution(const std::vector<ClassicalWeight>& factors,
                                                     const std::vector<std::vector<TypeVector>>& levels) {
    const int n = static_cast<int>(factors.size());
    const int m = static_cast<int>(factors[0].size());
    std::vector<double> dp{1.0};
    for (int i = 0; i < n; ++i) {
        std::vector<double> next(levels[i + 1].size(), 0.0);
        const auto& cur_types = levels[i];
        for (std::size_t t = 0; t < cur_types.size(); ++t) {
            if (dp[t] == 0.0) continue;
            TypeVector tv = cur_types[t];
            for (int x = 0; x < m; ++x) {
                const double px = factors[i][x];
                if (px <= 0.0) continue;
                ++tv.counts[x];
                next[type_rank(tv)] += dp[t] * px;
                --tv.counts[x];
            }
        }
        dp = std::move(next);
    }
    return dp;
}

} // namespace detail

/// Exact adversarial errors of the Neyman–Pearson test for a certified
/// minimizer pair, against arbitrarily-varying product strategies drawn from
/// the original generator sets. Strategies are enumerated exhaustively when
/// |set|^n fits under the cap; otherwise seeded random strategies plus the
/// constant single-generator strategies are used (the per-coordinate factor is
/// maximized at the minimizer itself, so constants carry the worst case).
inline AdversarialReport adversarial_product_errors(
    const composite::MinimizerPair& pair, const composite::CertificateReport& cert,
    const composite::HypothesisSet& rset, const composite::HypothesisSet& sset, double r, int n,
    const AdversarialConfig& cfg = {}) {
    if (!cert.pass)
        throw CertificateError("adversarial_product_errors: optimality certificate must pass first");
    rset.validate();
    sset.validate();
    if (!rset.is_classical() || !sset.is_classical())
        throw DimensionMismatchError("adversarial_product_errors: classical sets required");

    const double alpha_star = pair.alpha_star;
    const double c_r =
        divergence::psi_moments_classical(pair.rho_star, pair.sigma_star, alpha_star).psi1;
    SymmetricTest test = np_test(pair.rho_star, pair.sigma_star, c_r, n);
    auto test_types = enumerate_types(n, test.alphabet());

    std::vector<std::vector<TypeVector>> levels(n + 1);
    for (int i = 0; i <= n; ++i) levels[i] = enumerate_types(i, test.alphabet());

    AdversarialReport rep;
    rep.n = n;
    rep.r = r;
    rep.c = c_r;
    rep.alpha_star = alpha_star;
    rep.theta = pair.theta;
    rep.beta_bound = std::exp(-n * (r + std::log1p(-pair.theta)));
    rep.alpha_bound = std::exp(-n * (pair.value + std::log1p(-pair.theta)));

    auto run_side = [&](const std::vector<ClassicalWeight>& gens, bool beta_side, double& worst,
                        std::vector<int>& worst_strategy, std::size_t& checked, bool& exhaustive) {
        const std::size_t g = gens.size();
        auto eval = [&](const std::vector<int>& strategy) {
            std::vector<ClassicalWeight> factors;
            factors.reserve(n);
            for (int i = 0; i < n; ++i) factors.push_back(gens[strategy[i]]);
            auto dist = detail::product_type_distribution(factors, levels);
            double err = 0.0, comp = 0.0;
            for (std::size_t t = 0; t < dist.size(); ++t) {
                const double w = beta_side ? test.accept(t) : 1.0 - test.accept(t);
                double y = dist[t] * w - comp;
                double u = err + y;
                comp = (u - err) - y;
                err = u;
            }
            if (err > worst) {
                worst = err;
                worst_strategy = strategy;
            }
            ++checked;
        };
        double total = std::pow(static_cast<double>(g), n);
        exhaustive = total <= static_cast<double>(cfg.exhaustive_cap);
        if (exhaustive) {
            std::vector<int> strategy(n, 0);
            for (;;) {
                eval(strategy);
                int pos = n - 1;
                while (pos >= 0 && strategy[pos] == static_cast<int>(g) - 1) strategy[pos--] = 0;
                if (pos < 0) break;
                ++strategy[pos];
            }
        } else {
            for (std::size_t j = 0; j < g; ++j) eval(std::vector<int>(n, static_cast<int>(j)));
            std::mt19937_64 rng(cfg.seed);
            std::uniform_int_distribution<int> pick(0, static_cast<int>(g) - 1);
            for (int s = 0; s < cfg.random_strategies; ++s) {
                std::vector<int> strategy(n);
                for (auto& x : strategy) x = pick(rng);
                eval(strategy);
            }
        }
    };

    run_side(sset.classical, true, rep.worst_beta, rep.worst_beta_strategy, rep.beta_strategies,
             rep.beta_exhaustive);
    run_side(rset.classical, false, rep.worst_alpha, rep.worst_alpha_strategy, rep.alpha_strategies,
             rep.alpha_exhaustive);
    rep.pass = rep.worst_beta <= rep.beta_bound * (1.0 + 1e-9) + 1e-300 &&
               rep.worst_alpha <= rep.alpha_bound * (1.0 + 1e-9) + 1e-300;
    return rep;
}

// --------------------------------------------------------------------------
// CSV serialization (type counts..., acceptance)
// --------------------------------------------------------------------------

inline std::string to_csv(const SymmetricTest& test) {
    auto types = enumerate_types(test.n(), test.alphabet());
    std::string out;
    for (int i = 0; i < test.alphabet(); ++i) out += "count_" + std::to_string(i) + ",";
    out += "acceptance\n";
    for (std::size_t t = 0; t < types.size(); ++t) {
        for (int c : types[t].counts) out += std::to_string(c) + ",";
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", test.accept(t));
        out += buf;
        out += "\n";
    }
    return out;
}

} // namespace explab::typelab
