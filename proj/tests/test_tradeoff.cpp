#include <doctest.h>

#include <cmath>
#include <vector>

#include "explab/divergence.hpp"
#include "explab/rng.hpp"
#include "explab/tradeoff.hpp"

using namespace explab;
namespace dv = explab::divergence;
namespace tf = explab::tradeoff;

namespace {

ClassicalWeight cw(std::vector<double> w) { return ClassicalWeight(std::move(w)); }

const ClassicalWeight coin_rho = cw({0.5, 0.5});
const ClassicalWeight coin_sigma = cw({0.25, 0.75});

} // namespace

TEST_CASE("hoeffding: identical states, interval pair, pure states") {
    for (double r : {0.1, 0.5, 2.0})
        CHECK(tf::hoeffding(coin_rho, coin_rho, r).value() == doctest::Approx(0.0).epsilon(1e-8));

    // interval pairwise: H_r = log 2 for all r > 0
    auto sigma_k = cw({1.0, 0.0});
    for (double r : {0.05, 0.3, 1.0, 3.0})
        CHECK(tf::hoeffding(coin_rho, sigma_k, r).value() == doctest::Approx(std::log(2.0)).epsilon(1e-8));

    // pure states: H_r = +inf below C, = C above (classical embedding of orthogonalish vectors)
    Rng rng(3);
    Eigen::VectorXcd psi = random_unit_vector(3, rng), phi = random_unit_vector(3, rng);
    herm::DensityOperator pp{psi * psi.adjoint()};
    herm::HermitianOperator qq{(phi * phi.adjoint()).eval()};
    double c = -std::log(std::norm((psi.adjoint() * phi)(0, 0)));
    CHECK(tf::hoeffding(pp, qq, 0.5 * c).is_pos_inf());
    CHECK(tf::hoeffding(pp, qq, 2.0 * c).value() == doctest::Approx(c).epsilon(1e-7));
}

TEST_CASE("hoeffding: scaling law") {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        ClassicalWeight rho(random_distribution(3, rng)), sigma(random_distribution(3, rng));
        for (double t : {0.5, 2.0}) {
            for (double s : {0.5, 2.0}) {
                double r = 1.0;  // keeps r + log(s) positive
                double lhs = tf::hoeffding(rho.scaled(t), sigma.scaled(s), r).value();
                double rhs = tf::hoeffding(rho, sigma, r + std::log(s)).value() - std::log(t);
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("hoeffding monotone nonincreasing in r; zero iff r >= D") {
    Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        ClassicalWeight rho(random_distribution(3, rng)), sigma(random_distribution(3, rng));
        double d = dv::rel_entropy(rho, sigma).value();
        double prev = kInf;
        for (double r = 0.02; r < 2.0; r += 0.07) {
            double h = tf::hoeffding(rho, sigma, r).value();
            CHECK(h <= prev + 1e-10);
            prev = h;
            if (r > d + 1e-6) CHECK(h <= 1e-8);
            if (r < d - 1e-6) CHECK(h > 1e-8);
        }
    }
}

TEST_CASE("hoeffding anti: degenerate identical states and coin endpoint") {
    // identical states: psi~ == 0, so H*_r = r
    for (double r : {0.1, 1.0})
        CHECK(tf::hoeffding_anti(coin_rho, coin_rho, r) == doctest::Approx(r).epsilon(1e-9));

    // coin k=1 at r = log 4 >= r_infty: H*_r = r - D_infty = log 4 - log 2 = log 2
    CHECK(tf::hoeffding_anti(coin_rho, coin_sigma, std::log(4.0)) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-9));

    // r = D gives 0
    double d = dv::rel_entropy(coin_rho, coin_sigma).value();
    CHECK(tf::hoeffding_anti(coin_rho, coin_sigma, d) == doctest::Approx(0.0).epsilon(1e-9));

    CHECK_THROWS_AS(tf::hoeffding_anti(coin_rho, cw({1.0, 0.0}), 0.5), SupportMismatchError);
}

TEST_CASE("hoeffding anti: convex, continuous, nondecreasing; zero iff r <= D") {
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        ClassicalWeight rho(random_distribution(3, rng)), sigma(random_distribution(3, rng));
        double d = dv::rel_entropy(rho, sigma).value();
        std::vector<double> rs, hs;
        for (double r = 0.05; r < 2.5; r += 0.05) {
            rs.push_back(r);
            hs.push_back(tf::hoeffding_anti(rho, sigma, r));
        }
        for (std::size_t i = 1; i < hs.size(); ++i) CHECK(hs[i] >= hs[i - 1] - 1e-10);
        for (std::size_t i = 1; i + 1 < hs.size(); ++i)
            CHECK(hs[i - 1] - 2 * hs[i] + hs[i + 1] >= -1e-9);
        for (std::size_t i = 0; i < hs.size(); ++i) {
            if (rs[i] < d - 1e-6) CHECK(hs[i] <= 1e-8);
            if (rs[i] > d + 1e-3) CHECK(hs[i] > 1e-9);
        }
    }
}

TEST_CASE("hellinger arc: endpoints and componentwise form") {
    // alpha = 1 with contained support gives rho back
    auto p1 = tf::hellinger_arc(coin_rho, coin_sigma, 1.0);
    CHECK(p1.mu[0] == doctest::Approx(0.5));
    CHECK(p1.rate_to_rho == doctest::Approx(0.0));

    // alpha = 0 gives sigma restricted/renormalized to supp rho
    auto p0 = tf::hellinger_arc(coin_rho, coin_sigma, 0.0);
    CHECK(p0.mu[0] == doctest::Approx(0.25));
    CHECK(p0.mu[1] == doctest::Approx(0.75));

    // coin pair at alpha = 1/2: mu ∝ sqrt(p q) componentwise
    auto ph = tf::hellinger_arc(coin_rho, coin_sigma, 0.5);
    double z = std::sqrt(0.5 * 0.25) + std::sqrt(0.5 * 0.75);
    CHECK(ph.mu[0] == doctest::Approx(std::sqrt(0.5 * 0.25) / z));

    CHECK_THROWS_AS(tf::hellinger_arc(cw({1.0, 0.0}), cw({0.0, 1.0}), 0.5), DisjointSupportError);
}

TEST_CASE("psi derivatives: identities and finite differences") {
    // rho = sigma full support: psi'(alpha) = 0, psi''(alpha) = 0
    auto d0 = tf::psi_derivatives(coin_rho, coin_rho, 0.7);
    CHECK(d0.psi1 == doctest::Approx(0.0));
    CHECK(d0.psi2 == doctest::Approx(0.0));

    // interval pairwise: psi'(alpha) = -log 2 constant (affine psi)
    auto di = tf::psi_derivatives(coin_rho, cw({1.0, 0.0}), 0.3);
    CHECK(di.psi1 == doctest::Approx(-std::log(2.0)));
    CHECK(di.psi2 == doctest::Approx(0.0));

    // finite-difference oracle
    Rng rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        ClassicalWeight rho(random_distribution(4, rng)), sigma(random_distribution(4, rng));
        for (double a : {0.2, 0.5, 0.8, 1.5}) {
            const double h = 1e-5;
            double fd = (dv::psi_classical(rho, sigma, a + h) - dv::psi_classical(rho, sigma, a - h)) / (2 * h);
            CHECK(std::abs(tf::psi_derivatives(rho, sigma, a).psi1 - fd) <= 1e-6);
        }
    }
}

TEST_CASE("r_infty: coin and degenerate cases") {
    CHECK(tf::r_infty(coin_rho, coin_sigma).value() == doctest::Approx(std::log(4.0)));
    CHECK(tf::r_infty(coin_rho, coin_rho).value() == doctest::Approx(0.0));
    // affine-psi pair: r_infty = D_0 = D = D_infty = -log sigma(supp rho)
    auto rho3 = cw({0.5, 0.5, 0.0});
    auto sig3 = cw({0.25, 0.25, 0.5});
    CHECK(tf::r_infty(rho3, sig3).value() == doctest::Approx(std::log(2.0)));
    CHECK(dv::rel_entropy(rho3, sig3).value() == doctest::Approx(std::log(2.0)));
    CHECK(dv::max_rel_entropy(rho3, sig3).value() == doctest::Approx(std::log(2.0)));
}

TEST_CASE("solve_rate_alpha: arc identities against hoeffding evaluators") {
    // r = D gives alpha = 1 and tilde-Psi = 0
    double d = dv::rel_entropy(coin_rho, coin_sigma).value();
    auto pd = tf::solve_rate_alpha(coin_rho, coin_sigma, d);
    CHECK(pd.alpha == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(pd.rate_to_rho == doctest::Approx(0.0).epsilon(1e-10));

    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        ClassicalWeight rho(random_distribution(3, rng)), sigma(random_distribution(3, rng));
        double dd = dv::rel_entropy(rho, sigma).value();
        double d0 = -dv::psi_classical(rho, sigma, 0.0);
        double ri = tf::r_infty(rho, sigma).value();
        for (double frac : {0.25, 0.5, 0.75}) {
            double r_low = d0 + frac * (dd - d0);
            if (r_low > d0 + 1e-9) {
                auto a = tf::solve_rate_alpha(rho, sigma, r_low);
                CHECK(a.rate_to_sigma == doctest::Approx(r_low).epsilon(1e-9));
                CHECK(a.rate_to_rho ==
                      doctest::Approx(tf::hoeffding(rho, sigma, r_low).value()).epsilon(1e-8));
            }
            double r_high = dd + frac * (ri - dd);
            if (r_high < ri - 1e-9) {
                auto a = tf::solve_rate_alpha(rho, sigma, r_high);
                CHECK(a.alpha > 1.0);
                CHECK(a.rate_to_sigma == doctest::Approx(r_high).epsilon(1e-9));
                CHECK(std::abs(a.rate_to_rho - tf::hoeffding_anti(rho, sigma, r_high)) <= 1e-8);
            }
        }
    }

    // coin at r = 0.5 > D: alpha_r in (1, inf)
    auto a = tf::solve_rate_alpha(coin_rho, coin_sigma, 0.5);
    CHECK(a.alpha > 1.0);
    CHECK(a.rate_to_sigma == doctest::Approx(0.5).epsilon(1e-9));
    // cross-check by dense alpha-grid scan of D(mu_alpha || sigma)
    double best = kInf, best_alpha = 0.0;
    for (double g = 1.0; g < 40.0; g += 1e-3) {
        double err = std::abs(tf::hellinger_arc(coin_rho, coin_sigma, g).rate_to_sigma - 0.5);
        if (err < best) {
            best = err;
            best_alpha = g;
        }
    }
    CHECK(std::abs(best_alpha - a.alpha) <= 2e-3);

    // degenerate affine psi is rejected
    CHECK_THROWS_AS(tf::solve_rate_alpha(cw({0.5, 0.5, 0.0}), cw({0.25, 0.25, 0.5}), 0.3),
                    DegenerateError);
    CHECK_THROWS_AS(tf::solve_rate_alpha(coin_rho, coin_sigma, 10.0), OutOfRangeError);
}

TEST_CASE("continuity of tilde-Psi toward r_infty") {
    double ri = tf::r_infty(coin_rho, coin_sigma).value();
    double dinf = dv::max_rel_entropy(coin_rho, coin_sigma).value();
    double r = ri - 1e-5;
    auto a = tf::solve_rate_alpha(coin_rho, coin_sigma, r);
    CHECK(std::abs(a.rate_to_rho - (r - dinf)) <= 1e-3);
}

TEST_CASE("d2 and solve_d2") {
    CHECK(tf::d2(0.3, 0.3).value() == doctest::Approx(0.0));
    CHECK(tf::d2(0.5, 0.0).is_pos_inf());
    CHECK(tf::solve_d2(0.4, 0.0) == doctest::Approx(0.4));

    // bisection root cross-checked against a 1e6-point grid scan of d2(0.5 || .)
    double mu = tf::solve_d2(0.5, 0.2);
    CHECK(mu < 0.5);
    CHECK(tf::d2(0.5, mu).value() == doctest::Approx(0.2).epsilon(1e-12));
    double best = kInf, best_mu = 0.0;
    for (int i = 1; i < 1000000; ++i) {
        double m = 0.5 * i * 1e-6;
        double err = std::abs(tf::d2(0.5, m).value() - 0.2);
        if (err < best) {
            best = err;
            best_mu = m;
        }
    }
    CHECK(std::abs(best_mu - mu) <= 1e-6);

    CHECK_THROWS_AS(tf::solve_d2(0.5, -0.1), OutOfRangeError);
}

TEST_CASE("legendre: case formula equals dense u-grid supremum") {
    auto check_pair = [](const ClassicalWeight& rho, const ClassicalWeight& sigma) {
        auto l = tf::legendre_data_classical(rho, sigma);
        auto direct = [&](double r) {
            double best = 0.0;  // u = 0 endpoint
            for (int i = 1; i < 20000; ++i) {
                double u = i / 20000.0;
                double psit = (1.0 - u) * dv::psi_classical(rho, sigma, 1.0 / (1.0 - u));
                best = std::max(best, u * r - psit);
            }
            best = std::max(best, r - l.D_infty);
            return best;
        };
        for (double r : {0.1, 0.3, 0.6, 1.0, 1.3, 2.0}) {
            CHECK(std::abs(tf::legendre_tilde_Psi(l, r) - direct(r)) <= 1e-7);
            CHECK(std::abs(tf::legendre_tilde_Psi(l, r) - tf::hoeffding_anti(rho, sigma, r)) <= 1e-8);
        }
    };
    check_pair(coin_rho, coin_sigma);
    Rng rng(23);
    for (int trial = 0; trial < 5; ++trial)
        check_pair(ClassicalWeight(random_distribution(3, rng)),
                   ClassicalWeight(random_distribution(3, rng)));
}

TEST_CASE("legendre: Psi properties") {
    auto l = tf::legendre_data_classical(coin_rho, coin_sigma);
    // c <= D1+ gives Psi(c) = c, Psi^-(c) = 0
    double c0 = 0.5 * l.D1_plus;
    CHECK(tf::legendre_Psi(l, c0).value() == doctest::Approx(c0));
    CHECK(tf::legendre_Psi_minus(l, c0).value() == doctest::Approx(0.0));
    // strictly increasing on (D1+, D_infty)
    double prev = -kInf;
    for (double c = l.D1_plus; c <= l.D_infty + 1e-12; c += (l.D_infty - l.D1_plus) / 8) {
        double v = tf::legendre_Psi(l, c).value();
        CHECK(v > prev);
        prev = v;
    }
    // +inf beyond D_infty
    CHECK(tf::legendre_Psi(l, l.D_infty + 0.1).is_pos_inf());
    // r_infty = Psi(D_infty) = log 4 for the coin
    CHECK(l.r_infty == doctest::Approx(std::log(4.0)).epsilon(1e-8));
}

TEST_CASE("legendre: composite coin data reproduces the pairwise values") {
    ClassicalWeight s1 = coin_sigma, s2 = cw({0.75, 0.25});
    auto l = tf::legendre_data_composite({{coin_rho, s1}, {coin_rho, s2}});
    CHECK(l.D1_plus == doctest::Approx(std::log(2.0 / std::sqrt(3.0))));
    CHECK(l.D_infty == doctest::Approx(std::log(2.0)));
    CHECK(l.r_infty == doctest::Approx(std::log(4.0)).epsilon(1e-8));
    for (double r : {0.2, 0.5, 1.0, 1.5})
        CHECK(std::abs(tf::legendre_tilde_Psi(l, r) - tf::hoeffding_anti(coin_rho, s1, r)) <= 1e-7);
}

TEST_CASE("quantum hoeffding anti against a dense alpha-grid oracle") {
    Rng rng(59);
    for (int trial = 0; trial < 8; ++trial) {
        herm::DensityOperator rho{random_density_matrix(2 + trial % 2, rng)};
        herm::HermitianOperator sigma{random_density_matrix(2 + trial % 2, rng)};
        double dinf = dv::max_rel_entropy(rho, sigma).value();
        for (double r : {0.3, 0.8, 1.5}) {
            // direct maximization over a dense alpha grid, independent of the
            // golden-section optimizer
            double direct = std::max(0.0, r - dinf);
            for (int i = 1; i <= 3000; ++i) {
                double u = i / 3001.0;
                double a = 1.0 / (1.0 - u);
                double dstar = dv::sandwiched_renyi(rho, sigma, a).value();
                direct = std::max(direct, u * (r - dstar));
            }
            double opt = tf::hoeffding_anti(rho, sigma, r);
            CHECK(opt >= direct - 1e-10);
            CHECK(opt <= direct + 2e-5);  // grid resolution slack
        }
    }
}

TEST_CASE("solve_rate_alpha near the D_0 edge") {
    Rng rng(61);
    ClassicalWeight rho(random_distribution(3, rng)), sigma(random_distribution(3, rng));
    double d0 = -dv::psi_classical(rho, sigma, 0.0);
    double ri = tf::r_infty(rho, sigma).value();
    double r = d0 + 1e-10 * (ri - d0);
    auto arc = tf::solve_rate_alpha(rho, sigma, r);
    CHECK(arc.rate_to_sigma == doctest::Approx(r).epsilon(1e-8));
}

TEST_CASE("quantum hoeffding anti matches classical on commuting inputs") {
    herm::Matrix r2 = herm::Matrix::Zero(2, 2), s2 = herm::Matrix::Zero(2, 2);
    r2(0, 0) = 0.5; r2(1, 1) = 0.5;
    s2(0, 0) = 0.25; s2(1, 1) = 0.75;
    herm::DensityOperator rq{r2};
    herm::HermitianOperator sq{s2};
    for (double r : {0.3, 0.8, 1.5})
        CHECK(tf::hoeffding_anti(rq, sq, r) ==
              doctest::Approx(tf::hoeffding_anti(coin_rho, coin_sigma, r)).epsilon(1e-8));
}
