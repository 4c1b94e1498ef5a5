// verify.hpp — the certified check suites behind `explab verify` and the
// acceptance binary. Each suite pins its tolerances and thresholds here and
// returns a pass/fail result with a one-line detail string.

#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "explab/composite.hpp"
#include "explab/divergence.hpp"
#include "explab/gallery.hpp"
#include "explab/hermitian.hpp"
#include "explab/parallel.hpp"
#include "explab/rng.hpp"
#include "explab/tradeoff.hpp"
#include "explab/typelab.hpp"

namespace explab::verify {

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

namespace detail {

inline std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

template <class F>
SuiteResult run(const std::string& name, F&& body) {
    SuiteResult res;
    res.name = name;
    auto start = std::chrono::steady_clock::now();
    try {
        body(res);
    } catch (const std::exception& e) {
        res.pass = false;
        res.detail = std::string("exception: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

} // namespace detail

/// 1. Coin constants and the composite-vs-pairwise strong-converse gap.
inline SuiteResult coin_constants(double tol = 1e-9) {
    return detail::run("coin-constants", [&](SuiteResult& res) {
        double worst = kInf;
        for (int k : {1, 2}) {
            std::vector<double> grid;
            for (double r = k * std::log(4.0); r <= k * std::log(4.0) + 1.0; r += 0.25)
                grid.push_back(r);
            auto rep = gallery::coin_example_report(k, grid, 0, tol);
            for (const auto& row : rep.inequalities) {
                worst = std::min(worst, row.slack + row.tol);
                if (!row.pass) {
                    res.detail = "failed: " + row.name;
                    return;
                }
            }
        }
        res.pass = true;
        res.detail = detail::fmt("constants and gap rows hold for k=1,2 (worst slack %.2e)", worst);
    });
}

/// 2. Coin finite-n test-free bound, exhaustive over projective symmetric tests.
inline SuiteResult coin_finite_n(int kn_max = 14) {
    return detail::run("coin-finite-n", [&](SuiteResult& res) {
        std::vector<gallery::CoinFiniteNCheck> checks(kn_max);
        parallel_for(static_cast<std::size_t>(kn_max), [&](std::size_t i) {
            checks[i] = gallery::coin_finite_n_check(static_cast<int>(i) + 1);
        });
        double worst = kInf;
        std::size_t total = 0;
        for (const auto& chk : checks) {
            worst = std::min(worst, chk.worst_margin);
            total += chk.tests_checked;
            if (!chk.pass) {
                res.detail = detail::fmt("violated at kn=%g (margin %.2e)", chk.kn, chk.worst_margin);
                return;
            }
        }
        res.pass = true;
        res.detail = detail::fmt("all kn <= %g, %g tests, worst margin %.2e",
                                 static_cast<double>(kn_max), static_cast<double>(total), worst);
    });
}

/// 3. Interval example: exact closed forms, rate brackets, trade-off rows,
/// and the random cylinder-test trade-off at n = 8.
inline SuiteResult interval_example(int cylinder_tests = 1000) {
    return detail::run("interval", [&](SuiteResult& res) {
        for (int n = 8; n <= 24; n += 2) {
            for (double r : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6}) {
                auto rep = gallery::interval_example_report(n, r);
                for (const auto& row : rep.inequalities) {
                    if (!row.pass) {
                        res.detail = detail::fmt("failed at n=%g r=%g: ", n, r) + row.name;
                        return;
                    }
                }
            }
        }
        auto chk = gallery::interval_cylinder_tradeoff_check(8, 8, cylinder_tests);
        if (!chk.pass) {
            res.detail = detail::fmt("cylinder trade-off violated (margin %.2e)", chk.worst_margin);
            return;
        }
        res.pass = true;
        res.detail = detail::fmt("closed forms for n=8..24, cylinder margin %.2e", chk.worst_margin);
    });
}

/// 4. Stein-gap identity on seeded random PD triples plus the delta case.
inline SuiteResult stein_gap(int trials = 100, double tol = 1e-8, unsigned seed = 0) {
    return detail::run("stein-gap", [&](SuiteResult& res) {
        Rng rng(seed);
        double worst = kInf;
        for (int trial = 0; trial < trials; ++trial) {
            int dim = 2 + trial % 3;
            herm::DensityOperator rho{random_density_matrix(dim, rng)};
            herm::DensityOperator s1{random_density_matrix(dim, rng)};
            herm::DensityOperator s2{random_density_matrix(dim, rng)};
            auto rep = gallery::stein_gap_report(rho, s1, s2, tol);
            for (const auto& row : rep.inequalities) {
                if (row.relation == "==") worst = std::min(worst, row.tol + row.slack);
                if (!row.pass) {
                    res.detail = detail::fmt("identity failed at trial %g: ", trial) + row.name;
                    return;
                }
            }
        }
        Rng rng2(seed + 1);
        herm::DensityOperator s1{random_density_matrix(3, rng2)};
        herm::DensityOperator s2{random_density_matrix(3, rng2)};
        auto peak = gallery::top_diff_eigenvector_state(s1.op(), s2.op());
        auto rep = gallery::stein_gap_report(peak, s1, s2, tol);
        auto dd = gallery::diff_delta(s1.op(), s2.op());
        double gap = 0.0;
        for (const auto& kv : rep.values)
            if (kv.first == "gap") gap = kv.second.value();
        if (std::abs(gap - dd.delta) > tol) {
            res.detail = detail::fmt("top-eigenvector gap %.3e differs from delta %.3e", gap, dd.delta);
            return;
        }
        res.pass = true;
        res.detail = detail::fmt("%g random triples; identity margin %.2e; gap = delta", trials, worst);
    });
}

/// 5. Minimal 2x2: composite Stein bound strictly below the pairwise minimum.
/// The 1e-10 oracle agreement lives in the unit suite (128-bit reference).
inline SuiteResult minimal_2x2() {
    return detail::run("minimal-2x2", [&](SuiteResult& res) {
        herm::Matrix rm(2, 2), s1m(2, 2), s2m(2, 2);
        rm << 0.5, -0.5, -0.5, 0.5;
        s1m << 0.75, 0.25, 0.25, 0.25;
        s2m << 0.25, 0.25, 0.25, 0.75;
        herm::DensityOperator rho{rm}, s1{s1m}, s2{s2m};
        auto g = herm::geometric_mean(s1.op(), s2.op());
        double dg = divergence::rel_entropy(rho, g).value();
        double d1 = divergence::rel_entropy(rho, s1.op()).value();
        double d2 = divergence::rel_entropy(rho, s2.op()).value();
        double margin = std::min(d1, d2) - dg;
        // reference values computed by the 128-bit closed-form oracle
        // (tests/quad2x2.hpp): 1.58902691517397280982... and 1.66294601098014847751...
        const double dg_ref = 1.5890269151739728;
        const double d1_ref = 1.6629460109801485;
        if (margin <= 1e-3) {
            res.detail = detail::fmt("margin %.3e too small", margin);
            return;
        }
        if (std::abs(dg - dg_ref) > 1e-10 || std::abs(d1 - d1_ref) > 1e-10) {
            res.detail = detail::fmt("oracle mismatch: |dD#|=%.2e |dD1|=%.2e", std::abs(dg - dg_ref),
                                     std::abs(d1 - d1_ref));
            return;
        }
        res.pass = true;
        res.detail = detail::fmt("D(rho||s1#s2)=%.6f < min_j D = %.6f (margin %.4f)", dg,
                                 std::min(d1, d2), margin);
    });
}

/// 6. Direct-exponent separation on the minimal 2x2 inputs at (r,t) = (0.2, 0.2).
inline SuiteResult direct_separation(double r = 0.2, double t = 0.2) {
    return detail::run("direct-separation", [&](SuiteResult& res) {
        herm::Matrix s1m(2, 2), s2m(2, 2);
        s1m << 0.75, 0.25, 0.25, 0.25;
        s2m << 0.25, 0.25, 0.25, 0.75;
        herm::DensityOperator s1{s1m}, s2{s2m};
        auto rho = gallery::top_diff_eigenvector_state(s1.op(), s2.op());
        auto tuned = gallery::tune_direct_example(rho, s1, s2, r, t);
        double worst = kInf;
        for (const auto& row : tuned.report.inequalities) {
            worst = std::min(worst, row.slack);
            if (!row.pass) {
                res.detail = "failed: " + row.name;
                return;
            }
        }
        res.pass = true;
        res.detail = detail::fmt("both strict inequalities + chernoff corollary (worst slack %.2e, nu=%g)",
                                 worst, tuned.nu);
    });
}

/// 7. Renyi ordering D_alpha <= D^flat_alpha <= D^max_alpha, strict under
/// noncommutativity.
inline SuiteResult renyi_ordering(int trials = 100, unsigned seed = 0) {
    return detail::run("renyi-ordering", [&](SuiteResult& res) {
        Rng rng(seed);
        int strict = 0;
        for (int trial = 0; trial < trials; ++trial) {
            int dim = 2 + trial % 3;
            herm::DensityOperator rho{random_density_matrix(dim, rng)};
            herm::DensityOperator sig{random_density_matrix(dim, rng)};
            double comm = herm::commutator_norm(rho.op(), sig.op());
            for (double a : {0.25, 0.5, 0.75}) {
                double dp = divergence::petz_renyi(rho, sig.op(), a).value();
                double dl = divergence::log_euclidean_renyi(rho, sig.op(), a);
                double dm = divergence::maximal_renyi(rho, sig.op(), a);
                if (dl - dp < -1e-10 || dm - dl < -1e-10) {
                    res.detail = detail::fmt("ordering violated at trial %g alpha %.2f", trial, a);
                    return;
                }
                if (comm > 0.05) {
                    if (dl - dp <= 1e-6 || dm - dl <= 1e-6) {
                        res.detail = detail::fmt("strictness failed at trial %g alpha %.2f", trial, a);
                        return;
                    }
                    ++strict;
                }
            }
        }
        res.pass = true;
        res.detail = detail::fmt("%g trials, %g strict triples", trials, strict);
    });
}

/// 8. Hoeffding machinery: arc identities across (D_0, r_infty), the scaling
/// law, and the three-case Legendre formula against a dense u-grid.
inline SuiteResult hoeffding_machinery(int pairs = 50, unsigned seed = 0) {
    return detail::run("hoeffding-arc", [&](SuiteResult& res) {
        Rng rng(seed);
        double worst_arc = 0.0;
        for (int trial = 0; trial < pairs; ++trial) {
            int size = 2 + trial % 3;
            ClassicalWeight rho(random_distribution(size, rng)), sigma(random_distribution(size, rng));
            double d0 = -divergence::psi_classical(rho, sigma, 0.0);
            double d = divergence::rel_entropy(rho, sigma).value();
            double ri = tradeoff::r_infty(rho, sigma).value();
            for (int i = 1; i <= 8; ++i) {
                double r = d0 + i * (ri - d0) / 9.0;
                if (std::abs(r - d) < 1e-9) continue;
                auto arc = tradeoff::solve_rate_alpha(rho, sigma, r);
                worst_arc = std::max(worst_arc, std::abs(arc.rate_to_sigma - r));
                double want = r < d ? tradeoff::hoeffding(rho, sigma, r).value()
                                    : tradeoff::hoeffding_anti(rho, sigma, r);
                if (std::abs(arc.rate_to_sigma - r) > 1e-8 || std::abs(arc.rate_to_rho - want) > 1e-8) {
                    res.detail = detail::fmt("arc identity failed at trial %g r=%.3f", trial, r);
                    return;
                }
            }
            // scaling law
            for (double tt : {0.5, 2.0})
                for (double ss : {0.5, 2.0}) {
                    double r = std::max(d, 0.2) + 1.0;
                    double lhs = tradeoff::hoeffding(rho.scaled(tt), sigma.scaled(ss), r).value();
                    double rhs = tradeoff::hoeffding(rho, sigma, r + std::log(ss)).value() - std::log(tt);
                    if (std::abs(lhs - rhs) > 1e-9) {
                        res.detail = detail::fmt("scaling law failed at trial %g", trial);
                        return;
                    }
                }
            // three-case formula vs a direct supremum: dense u-grid plus a
            // local golden polish around the best grid point
            auto l = tradeoff::legendre_data_classical(rho, sigma);
            for (int i = 1; i <= 4; ++i) {
                double r = d0 + i * (ri + 0.5 - d0) / 4.0;
                if (r <= 0) continue;
                auto f = [&](double uu) {
                    return uu * r -
                           (1.0 - uu) * divergence::psi_classical(rho, sigma, 1.0 / (1.0 - uu));
                };
                double direct = std::max(0.0, r - l.D_infty);
                double ustar = 0.0;
                for (int u = 1; u < 4000; ++u) {
                    double uu = u / 4000.0;
                    double v = f(uu);
                    if (v > direct) {
                        direct = v;
                        ustar = uu;
                    }
                }
                if (ustar > 0.0) {
                    ScalarOpt polish = golden_max(f, std::max(1e-9, ustar - 2.5e-4),
                                                  std::min(1.0 - 1e-9, ustar + 2.5e-4), 1e-13);
                    direct = std::max(direct, polish.value);
                }
                if (std::abs(tradeoff::legendre_tilde_Psi(l, r) - direct) > 1e-7) {
                    res.detail = detail::fmt("case formula mismatch at trial %g r=%.3f", trial, r);
                    return;
                }
            }
        }
        res.pass = true;
        res.detail = detail::fmt("%g pairs, worst arc residual %.2e", pairs, worst_arc);
    });
}

/// 9. Ball test on the coin pair: exact beta bound and the alpha rate toward H*_r.
inline SuiteResult ball_test_suite() {
    return detail::run("ball-test", [&](SuiteResult& res) {
        ClassicalWeight rho({0.5, 0.5}), sigma({0.25, 0.75});
        double r = 0.5;
        double hstar = tradeoff::hoeffding_anti(rho, sigma, r);
        std::vector<int> ns;
        for (int n = 20; n <= 200; n += 10) ns.push_back(n);
        std::vector<std::string> failures(ns.size());
        parallel_for(ns.size(), [&](std::size_t idx) {
            int n = ns[idx];
            auto test = typelab::ball_test(sigma, r, n);
            ClassicalWeight nulls[] = {rho};
            ClassicalWeight alts[] = {sigma};
            auto e = typelab::exact_errors(test, nulls, alts);
            if (e.beta > (n + 1.0) * (n + 1.0) * std::exp(-n * r))
                failures[idx] = detail::fmt("beta bound violated at n=%g", n);
            double rate = -std::log1p(-e.alpha) / n;
            if (std::abs(rate - hstar) > (2.0 * std::log(n + 1.0) + 10.0) / n)
                failures[idx] = detail::fmt("rate bracket violated at n=%g", n);
        });
        for (const auto& f : failures)
            if (!f.empty()) {
                res.detail = f;
                return;
            }
        res.pass = true;
        res.detail = detail::fmt("n=20..200, H*_r=%.6f", hstar);
    });
}

/// 10. Type rounding: all three postconditions on random halfspace instances.
inline SuiteResult type_rounding(int trials = 1000, unsigned seed = 0) {
    return detail::run("type-rounding", [&](SuiteResult& res) {
        Rng rng(seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int trial = 0; trial < trials; ++trial) {
            int size = 2 + trial % 3;
            ClassicalWeight w(random_distribution(size, rng));
            std::vector<double> v(size);
            for (auto& x : v) x = u(rng);
            double dot = 0.0;
            for (int i = 0; i < size; ++i) dot += v[i] * w[i];
            int n = 60 + trial % 100;
            auto t = typelab::type_round_halfspace(w, v, dot - 1e-9, n);
            double l1 = 0.0, vdot = 0.0;
            int total = 0;
            for (int i = 0; i < size; ++i) {
                if (t.counts[i] < 0) {
                    res.detail = detail::fmt("negative count at trial %g", trial);
                    return;
                }
                total += t.counts[i];
                l1 += std::abs(static_cast<double>(t.counts[i]) / n - w[i]);
                vdot += v[i] * t.counts[i] / n;
            }
            if (total != n || l1 > 2.0 * (size - 1.0) / n + 1e-12 || vdot < dot - 1e-9 - 1e-12) {
                res.detail = detail::fmt("postcondition failed at trial %g", trial);
                return;
            }
        }
        res.pass = true;
        res.detail = detail::fmt("%g random instances", trials);
    });
}

/// 11. Adversarial bound chain: certified minimizers, exhaustive strategies
/// under the product beta bound, certificates within slack.
inline SuiteResult adversarial_chain(int instances = 20, unsigned seed = 0) {
    return detail::run("adversarial", [&](SuiteResult& res) {
        Rng rng(seed);
        int done = 0;
        double worst_cert = kInf, worst_ratio = 0.0;
        while (done < instances) {
            auto r = composite::make_classical_set(
                "R", {ClassicalWeight(random_distribution(2, rng))});
            auto s = composite::make_classical_set(
                "S", {ClassicalWeight(random_distribution(2, rng)),
                      ClassicalWeight(random_distribution(2, rng))});
            double d = composite::set_divergence(divergence::DivKind::relative, 0.0, r, s).value();
            if (d < 0.02) continue;
            double rate = 0.5 * d;
            auto pair = composite::minimize_Hr_over_hulls(r, s, rate);
            if (!pair.converged || pair.value < 1e-10) continue;
            auto cert = composite::optimality_certificate(pair, r, s);
            worst_cert = std::min(worst_cert, cert.worst_slack);
            if (cert.worst_slack < -1e-8) {
                res.detail = detail::fmt("certificate slack %.2e at instance %g", cert.worst_slack, done);
                return;
            }
            int n = 8 + (done % 3) * 4;  // |S|^n <= 2^16 < 1e5: exhaustive
            auto rep = typelab::adversarial_product_errors(pair, cert, r, s, rate, n);
            if (!rep.beta_exhaustive || !rep.pass) {
                res.detail = detail::fmt("bound chain failed at instance %g (n=%g)", done, n);
                return;
            }
            worst_ratio = std::max(worst_ratio, rep.worst_beta / rep.beta_bound);
            ++done;
        }
        res.pass = true;
        res.detail = detail::fmt("%g instances; cert slack >= %.2e; max beta/bound %.3f", instances,
                                 worst_cert, worst_ratio);
    });
}

/// 12. Pure-state families: Gram threshold and beta-bound rate toward C_min.
/// Families are drawn with pairwise squared overlaps capped at 1/2, which
/// keeps the rate tolerance 2 C_min / n sound for the 3+2 family size.
inline SuiteResult pure_states(int trials = 10, unsigned seed = 0) {
    return detail::run("pure-states", [&](SuiteResult& res) {
        Rng rng(seed);
        std::vector<int> grid;
        for (int n = 2; n <= 30; n += 2) grid.push_back(n);
        for (int trial = 0; trial < trials; ++trial) {
            std::vector<Eigen::VectorXcd> all;
            std::vector<Eigen::VectorXcd> psis = gallery::random_separated_family(4, 3, rng, all);
            std::vector<Eigen::VectorXcd> phis = gallery::random_separated_family(4, 2, rng, all);
            auto rep = gallery::pure_state_report(psis, phis, grid);
            bool beyond_half = false;
            for (const auto& kv : rep.values)
                if (kv.first.rfind("gram_lambda_min", 0) == 0 && kv.second.value() > 0.5)
                    beyond_half = true;
            if (!beyond_half) {
                res.detail = detail::fmt("no n <= 30 with lambda_min > 1/2 at trial %g", trial);
                return;
            }
            for (const auto& row : rep.inequalities) {
                if (!row.pass) {
                    res.detail = detail::fmt("failed at trial %g: ", trial) + row.name;
                    return;
                }
            }
        }
        res.pass = true;
        res.detail = detail::fmt("%g random 3+2 families, n up to 30", trials);
    });
}

/// 13. Geometric-mean properties (multiplicativity, fidelity chain) and the
/// semi-classical combiner bounds.
inline SuiteResult geometric_mean_suite(int trials = 100, int combiner_instances = 50,
                                        unsigned seed = 0) {
    return detail::run("geometric-mean", [&](SuiteResult& res) {
        Rng rng(seed);
        for (int trial = 0; trial < trials; ++trial) {
            herm::HermitianOperator a1{random_density_matrix(2, rng)}, b1{random_density_matrix(2, rng)};
            herm::HermitianOperator a2{random_density_matrix(2, rng)}, b2{random_density_matrix(2, rng)};
            herm::Matrix lhs =
                herm::kron(herm::geometric_mean(a1, b1), herm::geometric_mean(a2, b2)).matrix();
            herm::Matrix rhs =
                herm::geometric_mean(herm::kron(a1, a2), herm::kron(b1, b2)).matrix();
            if ((lhs - rhs).cwiseAbs().maxCoeff() > 1e-9) {
                res.detail = detail::fmt("multiplicativity failed at trial %g", trial);
                return;
            }
            double tg = herm::geometric_mean(a1, b1).trace();
            double f = herm::fidelity(a1, b1);
            if (tg > f + 1e-9 || f > 1.0 + 1e-9) {
                res.detail = detail::fmt("fidelity chain failed at trial %g", trial);
                return;
            }
        }
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        for (int inst = 0; inst < combiner_instances; ++inst) {
            int dim = 3 + inst % 2;
            auto diag = [&](const std::vector<double>& d) {
                herm::Matrix m = herm::Matrix::Zero(dim, dim);
                for (int i = 0; i < dim; ++i) m(i, i) = d[i];
                return herm::HermitianOperator{m};
            };
            std::vector<herm::HermitianOperator> rhos, sigmas, tests;
            for (int i = 0; i < 2; ++i) rhos.push_back(diag(random_distribution(dim, rng)));
            for (int j = 0; j < 2; ++j) sigmas.push_back(diag(random_distribution(dim, rng)));
            for (int i = 0; i < 4; ++i) {
                std::vector<double> d(dim);
                for (auto& x : d) x = u01(rng);
                tests.push_back(diag(d));
            }
            auto out = gallery::semiclassical_combine(rhos, sigmas, tests);
            if (!out.pass) {
                res.detail = detail::fmt("combiner bound failed at instance %g", inst);
                return;
            }
        }
        res.pass = true;
        res.detail = detail::fmt("%g mean-property trials, %g combiner instances", trials,
                                 combiner_instances);
    });
}

struct SuiteSpec {
    std::string name;
    std::function<SuiteResult()> runner;
};

/// tol feeds the identity-tolerance suites; criteria with their own pinned
/// thresholds keep them.
inline std::vector<SuiteSpec> all_suites(double tol = 1e-8) {
    return {
        {"coin-constants", [] { return coin_constants(); }},
        {"coin-finite-n", [] { return coin_finite_n(); }},
        {"interval", [] { return interval_example(); }},
        {"stein-gap", [tol] { return stein_gap(100, tol); }},
        {"minimal-2x2", [] { return minimal_2x2(); }},
        {"direct-separation", [] { return direct_separation(); }},
        {"renyi-ordering", [] { return renyi_ordering(); }},
        {"hoeffding-arc", [] { return hoeffding_machinery(); }},
        {"ball-test", [] { return ball_test_suite(); }},
        {"type-rounding", [] { return type_rounding(); }},
        {"adversarial", [] { return adversarial_chain(); }},
        {"pure-states", [] { return pure_states(); }},
        {"geometric-mean", [] { return geometric_mean_suite(); }},
    };
}

} // namespace explab::verify
