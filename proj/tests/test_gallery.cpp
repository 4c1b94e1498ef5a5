#include <doctest.h>

#include <cmath>
#include <vector>

#include "explab/gallery.hpp"
#include "explab/rng.hpp"
#include "quad2x2.hpp"

using namespace explab;
namespace gl = explab::gallery;
namespace dv = explab::divergence;
namespace tf = explab::tradeoff;
using herm::DensityOperator;
using herm::HermitianOperator;
using herm::Matrix;

namespace {

DensityOperator minimal_rho() {
    Matrix m(2, 2);
    m << 0.5, -0.5, -0.5, 0.5;
    return DensityOperator{m};
}

DensityOperator minimal_sigma1() {
    Matrix m(2, 2);
    m << 0.75, 0.25, 0.25, 0.25;
    return DensityOperator{m};
}

DensityOperator minimal_sigma2() {
    Matrix m(2, 2);
    m << 0.25, 0.25, 0.25, 0.75;
    return DensityOperator{m};
}

} // namespace

TEST_CASE("diff_delta: commuting, equal, and the minimal pair") {
    Matrix d1 = Matrix::Zero(2, 2), d2 = Matrix::Zero(2, 2);
    d1(0, 0) = 0.3; d1(1, 1) = 0.7;
    d2(0, 0) = 0.6; d2(1, 1) = 0.4;
    auto dd = gl::diff_delta(HermitianOperator{d1}, HermitianOperator{d2});
    CHECK(dd.diff.matrix().cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(dd.delta <= 1e-10);

    Rng rng(3);
    HermitianOperator a{random_density_matrix(3, rng)};
    auto de = gl::diff_delta(a, a);
    CHECK(de.delta <= 1e-10);

    auto dm = gl::diff_delta(minimal_sigma1().op(), minimal_sigma2().op());
    CHECK(dm.trace_residual <= 1e-9);
    CHECK(dm.delta > 1e-3);

    CHECK_THROWS_AS(gl::diff_delta(HermitianOperator{(d1 * 0.0).eval()}, HermitianOperator{d2}),
                    NotPdError);
}

TEST_CASE("hat_triple: symmetry and commuting reduction") {
    Rng rng(5);
    DensityOperator rho{random_density_matrix(2, rng)};
    auto hat = gl::hat_triple(rho, minimal_sigma1(), minimal_sigma2());
    CHECK(hat.log_symmetry_residual <= 1e-9);
    CHECK(hat.rho_hat.dim() == 4);
    // D(rho_hat || sigma1_hat) = D(rho_hat || sigma2_hat)
    double a = dv::rel_entropy(hat.rho_hat, hat.sigma1_hat.op()).value();
    double b = dv::rel_entropy(hat.rho_hat, hat.sigma2_hat.op()).value();
    CHECK(a == doctest::Approx(b).epsilon(1e-10));

    // sigma1 = sigma2 gives identical hats and zero gap
    auto same = gl::hat_triple(rho, minimal_sigma1(), minimal_sigma1());
    CHECK((same.sigma1_hat.matrix() - same.sigma2_hat.matrix()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("stein_gap_report: identity on random triples and the delta case") {
    Rng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        int dim = 2 + trial % 3;
        DensityOperator rho{random_density_matrix(dim, rng)};
        DensityOperator s1{random_density_matrix(dim, rng)};
        DensityOperator s2{random_density_matrix(dim, rng)};
        auto rep = gl::stein_gap_report(rho, s1, s2);
        for (const auto& row : rep.inequalities) CHECK(row.pass);
    }

    // rho = top diff eigenvector: gap equals delta
    auto rho_peak = gl::top_diff_eigenvector_state(minimal_sigma1().op(), minimal_sigma2().op());
    auto rep = gl::stein_gap_report(rho_peak, minimal_sigma1(), minimal_sigma2());
    auto dd = gl::diff_delta(minimal_sigma1().op(), minimal_sigma2().op());
    double gap = 0.0;
    for (const auto& kv : rep.values)
        if (kv.first == "gap") gap = kv.second.value();
    CHECK(gap == doctest::Approx(dd.delta).epsilon(1e-8));
    CHECK(rep.all_pass());

    // invertible variant achieves delta/2
    auto rho_half = gl::interior_diff_state(minimal_sigma1().op(), minimal_sigma2().op());
    CHECK(herm::lambda_extremes(rho_half.op()).second > 1e-6);
    double tr = (rho_half.matrix() * dd.diff.matrix()).trace().real();
    CHECK(tr == doctest::Approx(dd.delta / 2).epsilon(1e-10));
}

TEST_CASE("minimal 2x2 example against the 128-bit oracle") {
    using quad2x2::Mat;
    Mat rho{0.5, -0.5, 0.5};
    Mat s1{0.75, 0.25, 0.25};
    Mat s2{0.25, 0.25, 0.75};
    Mat g = quad2x2::geometric_mean(s1, s2);
    __float128 dg = quad2x2::rel_entropy(rho, g);
    __float128 dp1 = quad2x2::rel_entropy(rho, s1);
    __float128 dp2 = quad2x2::rel_entropy(rho, s2);
    CHECK(static_cast<double>(dp1 - dp2) == doctest::Approx(0.0).epsilon(1e-25));
    double margin = static_cast<double>(dp1 < dp2 ? dp1 - dg : dp2 - dg);
    CHECK(margin > 1e-3);

    // double-precision path matches the oracle to 1e-10
    auto gq = herm::geometric_mean(minimal_sigma1().op(), minimal_sigma2().op());
    double dgd = dv::rel_entropy(minimal_rho(), gq).value();
    double dp1d = dv::rel_entropy(minimal_rho(), minimal_sigma1().op()).value();
    CHECK(std::abs(dgd - static_cast<double>(dg)) <= 1e-10);
    CHECK(std::abs(dp1d - static_cast<double>(dp1)) <= 1e-10);
}

TEST_CASE("param_family: reductions and closed forms") {
    Rng rng(11);
    DensityOperator rho{random_density_matrix(2, rng)};
    auto s1 = minimal_sigma1(), s2 = minimal_sigma2();

    // lambda = eta = mu = nu = 1 reduces to the hat triple padded with zeros
    auto fam1 = gl::param_family(rho, s1, s2, 1, 1, 1, 1);
    auto hat = gl::hat_triple(rho, s1, s2);
    CHECK((fam1.rho.matrix().topLeftCorner(4, 4) - hat.rho_hat.matrix()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(fam1.rho.matrix()(4, 4).real() == doctest::Approx(0.0));
    CHECK(fam1.rho.matrix()(5, 5).real() == doctest::Approx(0.0));

    std::uniform_real_distribution<double> u(0.1, 0.9);
    for (int trial = 0; trial < 10; ++trial) {
        double lambda = u(rng), eta = u(rng), mu = u(rng), nu = u(rng);
        auto fam = gl::param_family(rho, s1, s2, lambda, eta, mu, nu);
        // closed-form relative entropies vs direct evaluation
        double dh1 = dv::rel_entropy(hat.rho_hat, hat.sigma1_hat.op()).value();
        double direct = dv::rel_entropy(fam.rho, fam.sigma1.op()).value();
        double closed =
            gl::param_family_rel_entropy_closed_form(dh1, lambda, eta, mu, nu).value();
        CHECK(direct == doctest::Approx(closed).epsilon(1e-9));

        double dhg = dv::rel_entropy(hat.rho_hat,
                                     herm::geometric_mean(hat.sigma1_hat.op(), hat.sigma2_hat.op()))
                         .value();
        double direct_g = dv::rel_entropy(fam.rho, fam.geomean_closed_form).value();
        double closed_g =
            gl::param_family_rel_entropy_closed_form(dhg, lambda, eta, mu, nu).value();
        CHECK(direct_g == doctest::Approx(closed_g).epsilon(1e-9));

        // geometric mean closed form vs the hermcore evaluation
        auto g_direct = herm::geometric_mean(fam.sigma1.op(), fam.sigma2.op());
        CHECK((g_direct.matrix() - fam.geomean_closed_form.matrix()).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("tune_stein_example: chain equalities and negative control") {
    auto rho = gl::top_diff_eigenvector_state(minimal_sigma1().op(), minimal_sigma2().op());
    auto rep = gl::tune_stein_example(rho, minimal_sigma1(), minimal_sigma2(), 0.25);
    CHECK(rep.all_pass());

    // any admissible lambda works
    auto rep2 = gl::tune_stein_example(rho, minimal_sigma1(), minimal_sigma2(), 0.25, 0.3);
    CHECK(rep2.all_pass());

    CHECK_THROWS_AS(gl::tune_stein_example(rho, minimal_sigma1(), minimal_sigma1(), 0.25),
                    CommutingInputError);
}

TEST_CASE("tune_direct_example: strict separation at (0.2, 0.2) with chernoff corollary") {
    auto rho = gl::top_diff_eigenvector_state(minimal_sigma1().op(), minimal_sigma2().op());
    auto tuned = gl::tune_direct_example(rho, minimal_sigma1(), minimal_sigma2(), 0.2, 0.2);
    CHECK(tuned.report.all_pass());
    CHECK(tuned.kappa > 0.0);
    CHECK(tuned.s < 1.0 / 3.0);
    CHECK(tuned.eta > 0.0);
    CHECK(tuned.eta < 1.0);
    bool has_chernoff = false;
    for (const auto& row : tuned.report.inequalities)
        if (row.name.rfind("chernoff", 0) == 0) has_chernoff = true;
    CHECK(has_chernoff);
}

TEST_CASE("coin_example_report: constants, gaps, finite-n bound") {
    for (int k : {1, 2}) {
        std::vector<double> grid;
        for (double r = 0.2 * k; r <= 1.6 * k; r += 0.1) grid.push_back(r);
        grid.push_back(k * std::log(4.0));
        auto rep = gl::coin_example_report(k, grid, /*finite_n_kn=*/8);
        CHECK(rep.all_pass());
    }
    // k = 1 headline constants
    auto rep = gl::coin_example_report(1, {}, 0);
    for (const auto& kv : rep.values) {
        if (kv.first == "D") CHECK(kv.second.value() == doctest::Approx(0.14384103622589045).epsilon(1e-12));
        if (kv.first == "D_infty") CHECK(kv.second.value() == doctest::Approx(std::log(2.0)));
        if (kv.first == "r_infty") CHECK(kv.second.value() == doctest::Approx(std::log(4.0)));
    }
}

TEST_CASE("coin finite-n check is exhaustive per type") {
    auto fin = gl::coin_finite_n_check(8);
    CHECK(fin.tests_checked == (std::uint64_t{1} << 9));
    CHECK(fin.pass);
    CHECK(fin.worst_margin >= -1e-12);
}

TEST_CASE("interval example: exact closed forms") {
    // n = 10, r = 0.3: m_n = 21, alpha = 1 - (1023/1024)^21
    CHECK(gl::interval_m_n(10, 0.3) == 21);
    auto rep = gl::interval_example_report(10, 0.3);
    double alpha_expected = 1.0 - std::pow(1023.0 / 1024.0, 21);
    for (const auto& kv : rep.values)
        if (kv.first == "alpha_n")
            CHECK(kv.second.value() == doctest::Approx(alpha_expected).epsilon(1e-12));
    CHECK(rep.all_pass());

    for (int n : {10, 14, 18, 24}) {
        for (double r : {0.1, 0.3, 0.6}) {
            auto rp = gl::interval_example_report(n, r);
            CHECK(rp.all_pass());
        }
    }

    CHECK_THROWS_AS(gl::interval_example_report(10, 0.3, 5), DepthTooSmallError);
}

TEST_CASE("interval: trigamma tail accuracy") {
    // sum_{k > m} k^{-2} against a long partial sum
    for (long long m : {1LL, 5LL, 21LL, 1000LL}) {
        double direct = 0.0;
        for (long long k = 4000000; k > m; --k) direct += 1.0 / (static_cast<double>(k) * k);
        double tail = gl::detail::trigamma(static_cast<double>(m) + 1.0);
        CHECK(std::abs(tail - direct) <= 3e-7);  // direct sum is truncated at 4e6
    }
    CHECK(gl::detail::trigamma(1.0) == doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-14));
}

TEST_CASE("interval: random cylinder trade-off and MC demo direction") {
    auto chk = gl::interval_cylinder_tradeoff_check(8, 8, 200, 1);
    CHECK(chk.pass);
    CHECK(chk.worst_margin >= -1e-9);

    auto mc = gl::interval_mc_demo(6, 0.3, 4000, 2);
    auto rep = gl::interval_example_report(6, 0.3);
    double alpha_exact = 0.0;
    for (const auto& kv : rep.values)
        if (kv.first == "alpha_n") alpha_exact = kv.second.value();
    CHECK(std::abs(mc.alpha_estimate - alpha_exact) <= 0.05);
}

TEST_CASE("pure_state_report: orthogonal, two-vector threshold, random family") {
    // orthogonal families: C_min = +inf, beta bound absent
    std::vector<Eigen::VectorXcd> e1{Eigen::VectorXcd::Unit(3, 0)};
    std::vector<Eigen::VectorXcd> e2{Eigen::VectorXcd::Unit(3, 1)};
    auto rep0 = gl::pure_state_report(e1, e2, {1, 2});
    for (const auto& kv : rep0.values)
        if (kv.first == "C_min") CHECK(kv.second.is_pos_inf());

    // two psis at overlap 0.9: lambda_min(G^n) = 1 - 0.9^n > 1/2 from n = 7
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(2), b = Eigen::VectorXcd::Zero(2);
    a(0) = 1.0;
    b(0) = 0.9;
    b(1) = std::sqrt(1.0 - 0.81);
    std::vector<Eigen::VectorXcd> psis{a, b};
    std::vector<Eigen::VectorXcd> phis{Eigen::VectorXcd::Unit(2, 1)};
    std::vector<int> grid;
    for (int n = 1; n <= 12; ++n) grid.push_back(n);
    auto rep = gl::pure_state_report(psis, phis, grid);
    CHECK(rep.all_pass());
    for (const auto& kv : rep.values) {
        if (kv.first == "gram_lambda_min[n=6]") CHECK(kv.second.value() < 0.5);
        if (kv.first == "gram_lambda_min[n=7]") {
            CHECK(kv.second.value() > 0.5);
            CHECK(kv.second.value() == doctest::Approx(1.0 - std::pow(0.9, 7)).epsilon(1e-12));
        }
    }

    // random 3 + 2 family in dim 4; cross-check C_min against pairwise hoeffding
    Rng rng(13);
    std::vector<Eigen::VectorXcd> ps, qs;
    for (int i = 0; i < 3; ++i) ps.push_back(random_unit_vector(4, rng));
    for (int j = 0; j < 2; ++j) qs.push_back(random_unit_vector(4, rng));
    std::vector<int> ns{5, 10, 20, 30};
    auto rep2 = gl::pure_state_report(ps, qs, ns);
    CHECK(rep2.all_pass());
    double c_min = kInf;
    for (const auto& psi : ps)
        for (const auto& phi : qs) {
            DensityOperator rpp{(psi * psi.adjoint()).eval()};
            HermitianOperator qpp{(phi * phi.adjoint()).eval()};
            double c = tf::hoeffding(rpp, qpp, 50.0).value();  // = C for r >= C
            c_min = std::min(c_min, c);
        }
    for (const auto& kv : rep2.values)
        if (kv.first == "C_min") CHECK(kv.second.value() == doctest::Approx(c_min).epsilon(1e-6));

    // repeated vectors rejected
    std::vector<Eigen::VectorXcd> dup{a, a};
    CHECK_THROWS_AS(gl::pure_state_report(dup, phis, {1}), DegenerateFamilyError);
}

TEST_CASE("semiclassical_combine: diagonal families, NP tests, negative control") {
    auto diag = [](std::vector<double> d) {
        Matrix m = Matrix::Zero(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return HermitianOperator{m};
    };
    // k = m = 1 diagonal case
    {
        HermitianOperator rho = diag({0.6, 0.4, 0.0});
        HermitianOperator sig = diag({0.1, 0.2, 0.7});
        HermitianOperator t = diag({1.0, 0.7, 0.0});
        HermitianOperator grid[] = {t};
        HermitianOperator rs[] = {rho};
        HermitianOperator ss[] = {sig};
        auto res = gl::semiclassical_combine(rs, ss, grid);
        CHECK(res.pass);
        // Q is a projector
        CHECK((res.q.matrix() * res.q.matrix() - res.q.matrix()).cwiseAbs().maxCoeff() <= 1e-9);
    }
    // diagonal families with randomized tests
    Rng rng(17);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<HermitianOperator> rhos, sigmas, tests;
        int k = 2, m = 2, dim = 4;
        for (int i = 0; i < k; ++i) {
            ClassicalWeight w(random_distribution(dim, rng));
            std::vector<double> d(w.weights().begin(), w.weights().end());
            rhos.push_back(diag(d));
        }
        for (int j = 0; j < m; ++j) {
            ClassicalWeight w(random_distribution(dim, rng));
            std::vector<double> d(w.weights().begin(), w.weights().end());
            sigmas.push_back(diag(d));
        }
        for (int i = 0; i < k * m; ++i) {
            std::vector<double> d(dim);
            for (auto& x : d) x = u01(rng);
            tests.push_back(diag(d));
        }
        auto res = gl::semiclassical_combine(rhos, sigmas, tests);
        CHECK(res.max_alpha <= res.alpha_bound + 1e-12);
        CHECK(res.max_beta <= res.beta_bound + 1e-12);
    }
    // genuinely semi-classical but not fully classical: block structure with
    // noncommuting rho blocks, sigma proportional to identity on each block
    {
        Rng rng2(19);
        Matrix r1 = Matrix::Zero(4, 4), r2 = Matrix::Zero(4, 4);
        r1.topLeftCorner(2, 2) = random_density_matrix(2, rng2);
        r2.topLeftCorner(2, 2) = random_density_matrix(2, rng2);
        Matrix s = 0.25 * Matrix::Identity(4, 4);
        HermitianOperator rs[] = {HermitianOperator{r1}, HermitianOperator{r2}};
        HermitianOperator ss[] = {HermitianOperator{s}};
        Matrix t1 = Matrix::Identity(4, 4) * 0.4, t2 = Matrix::Identity(4, 4) * 0.6;
        HermitianOperator grid[] = {HermitianOperator{t1}, HermitianOperator{t2}};
        auto res = gl::semiclassical_combine(rs, ss, grid);
        CHECK(res.pass);
    }
    // noncommuting input rejected
    {
        Rng rng3(23);
        HermitianOperator r{random_density_matrix(2, rng3)};
        HermitianOperator s{random_density_matrix(2, rng3)};
        HermitianOperator t{(0.5 * Matrix::Identity(2, 2)).eval()};
        HermitianOperator rs[] = {r};
        HermitianOperator ss[] = {s};
        HermitianOperator grid[] = {t};
        CHECK_THROWS_AS(gl::semiclassical_combine(rs, ss, grid), NotSemiClassicalError);
    }
}

TEST_CASE("report slack semantics") {
    gl::CounterexampleReport rep;
    rep.check("le", 1.0, "<=", 2.0, 1e-9);
    rep.check("eq", 1.0, "==", 1.0 + 1e-10, 1e-9);
    rep.check("strict_fail", 1.0, "<", 1.0, 1e-9);
    CHECK(rep.inequalities[0].pass);
    CHECK(rep.inequalities[0].slack == doctest::Approx(1.0));
    CHECK(rep.inequalities[1].pass);
    CHECK_FALSE(rep.inequalities[2].pass);
    CHECK_FALSE(rep.all_pass());
}
