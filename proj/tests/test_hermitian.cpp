#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "explab/hermitian.hpp"
#include "explab/rng.hpp"

using namespace explab;
using herm::HermitianOperator;
using herm::Matrix;

namespace {

Matrix diag2(double a, double b) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

Matrix diag3(double a, double b, double c) {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    return m;
}

} // namespace

TEST_CASE("eig_herm basic spectra") {
    HermitianOperator id3{Matrix::Identity(3, 3)};
    auto es = herm::eig_herm(id3);
    for (int i = 0; i < 3; ++i) CHECK(es.eigenvalues(i) == doctest::Approx(1.0));

    HermitianOperator d{diag2(0.25, 0.75)};
    auto ed = herm::eig_herm(d);
    CHECK(ed.eigenvalues(0) == doctest::Approx(0.25));
    CHECK(ed.eigenvalues(1) == doctest::Approx(0.75));

    // 2x2 closed form: [[0,1],[1,0]] has eigenvalues -1, 1
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    auto ex = herm::eig_herm(HermitianOperator{x});
    CHECK(ex.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(ex.eigenvalues(1) == doctest::Approx(1.0));

    // reconstruction
    Rng rng(1);
    Matrix h = random_gue(4, rng);
    HermitianOperator ho{h};
    auto eh = herm::eig_herm(ho);
    Matrix rec = eh.eigenvectors * eh.eigenvalues.asDiagonal() * eh.eigenvectors.adjoint();
    CHECK((rec - ho.matrix()).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, h.cwiseAbs().maxCoeff()));
}

TEST_CASE("hermitization and rejection") {
    Matrix m(2, 2);
    m << 1.0, std::complex<double>(0.0, 1.0), std::complex<double>(0.0, -1.0), 2.0;
    CHECK_NOTHROW(HermitianOperator{m});
    Matrix bad(2, 2);
    bad << 1.0, 2.0, 0.0, 1.0;
    CHECK_THROWS_AS(HermitianOperator{bad}, NotHermitianError);
}

TEST_CASE("support_projection ranks and threshold rule") {
    auto p1 = herm::support_projection(HermitianOperator{diag2(1.0, 0.0)});
    CHECK(p1.rank == 1);
    Matrix proj = p1.projector();
    CHECK(proj(0, 0).real() == doctest::Approx(1.0));
    CHECK(proj(1, 1).real() == doctest::Approx(0.0));

    auto p2 = herm::support_projection(HermitianOperator{diag2(0.5, 0.5)});
    CHECK(p2.rank == 2);

    auto p3 = herm::support_projection(HermitianOperator{diag2(1.0, 1e-16)}, 1e-12);
    CHECK(p3.rank == 1);

    CHECK_THROWS_AS(herm::support_projection(HermitianOperator{diag2(1.0, -0.5)}), NotPsdError);
}

TEST_CASE("matrix functions on the support") {
    HermitianOperator a{diag2(1.0, std::exp(1.0))};
    Matrix l = herm::mat_log_on_support(a).matrix();
    CHECK(l(0, 0).real() == doctest::Approx(0.0));
    CHECK(l(1, 1).real() == doctest::Approx(1.0));

    // logn 0 := 0
    Matrix l0 = herm::mat_log_on_support(HermitianOperator{diag2(1.0, 0.0)}).matrix();
    CHECK(l0.cwiseAbs().maxCoeff() == doctest::Approx(0.0));

    Matrix ph = herm::mat_pow_on_support(HermitianOperator{diag2(4.0, 9.0)}, 0.5).matrix();
    CHECK(ph(0, 0).real() == doctest::Approx(2.0));
    CHECK(ph(1, 1).real() == doctest::Approx(3.0));

    // restriction of log to the support equals elementwise log of nonzero eigenvalues
    Rng rng(7);
    Matrix rho = random_density_matrix(3, rng);
    auto es = herm::eig_herm(HermitianOperator{rho});
    Matrix lr = herm::mat_log_on_support(HermitianOperator{rho}).matrix();
    for (int i = 0; i < 3; ++i) {
        auto v = es.eigenvectors.col(i);
        double expect = std::log(es.eigenvalues(i));
        CHECK((v.adjoint() * lr * v)(0, 0).real() == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("geometric mean: idempotence, commuting case, symmetry") {
    Rng rng(3);
    Matrix a = random_density_matrix(3, rng);
    HermitianOperator ha{a};
    Matrix g = herm::geometric_mean(ha, ha, 0.5).matrix();
    CHECK((g - a).cwiseAbs().maxCoeff() <= 1e-10);

    HermitianOperator d1{diag3(0.2, 0.3, 0.5)}, d2{diag3(0.5, 0.25, 0.25)};
    Matrix gc = herm::geometric_mean(d1, d2, 0.5).matrix();
    for (int i = 0; i < 3; ++i)
        CHECK(gc(i, i).real() ==
              doctest::Approx(std::sqrt(d1.matrix()(i, i).real() * d2.matrix()(i, i).real())));

    for (int trial = 0; trial < 20; ++trial) {
        int dim = 2 + static_cast<int>(trial % 3);
        HermitianOperator x{random_density_matrix(dim, rng)};
        HermitianOperator y{random_density_matrix(dim, rng)};
        Matrix gxy = herm::geometric_mean(x, y, 0.5).matrix();
        Matrix gyx = herm::geometric_mean(y, x, 0.5).matrix();
        CHECK((gxy - gyx).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("geometric mean: multiplicativity over tensor products") {
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        HermitianOperator a1{random_density_matrix(2, rng)}, b1{random_density_matrix(2, rng)};
        HermitianOperator a2{random_density_matrix(2, rng)}, b2{random_density_matrix(2, rng)};
        Matrix lhs = herm::kron(herm::geometric_mean(a1, b1), herm::geometric_mean(a2, b2)).matrix();
        Matrix rhs = herm::geometric_mean(herm::kron(a1, a2), herm::kron(b1, b2)).matrix();
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("geometric mean: trace bounded by fidelity, equality iff equal") {
    Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        HermitianOperator a{random_density_matrix(3, rng)}, b{random_density_matrix(3, rng)};
        double tg = herm::geometric_mean(a, b).trace();
        double f = herm::fidelity(a, b);
        CHECK(tg <= f + 1e-9);
        CHECK(f <= 1.0 + 1e-9);
        CHECK(f < 1.0 - 1e-4);  // distinct random states
    }
    HermitianOperator a{random_density_matrix(3, rng)};
    CHECK(herm::geometric_mean(a, a).trace() == doctest::Approx(1.0));
    CHECK(herm::fidelity(a, a) == doctest::Approx(1.0));
}

TEST_CASE("geometric mean: singular handling") {
    // equal supports: deflate and re-embed
    HermitianOperator a{diag3(0.6, 0.4, 0.0)}, b{diag3(0.3, 0.7, 0.0)};
    Matrix g = herm::geometric_mean(a, b).matrix();
    CHECK(g(0, 0).real() == doctest::Approx(std::sqrt(0.18)));
    CHECK(g(2, 2).real() == doctest::Approx(0.0));

    // support mismatch with neither definite
    HermitianOperator c{diag3(1.0, 0.0, 0.0)}, d{diag3(0.0, 1.0, 0.0)};
    CHECK_THROWS_AS(herm::geometric_mean(c, d), SupportMismatchError);
}

TEST_CASE("kron and kron_power") {
    HermitianOperator i2{Matrix::Identity(2, 2)};
    CHECK((herm::kron(i2, i2).matrix() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

    double p = 0.3;
    HermitianOperator bern{diag2(p, 1 - p)};
    Matrix k2 = herm::kron_power(bern, 2).matrix();
    CHECK(k2(0, 0).real() == doctest::Approx(p * p));
    CHECK(k2(1, 1).real() == doctest::Approx(p * (1 - p)));
    CHECK(k2(2, 2).real() == doctest::Approx((1 - p) * p));
    CHECK(k2(3, 3).real() == doctest::Approx((1 - p) * (1 - p)));

    CHECK_THROWS_AS(herm::kron_power(i2, 20, 4096), CapExceededError);
}

TEST_CASE("trace norm, fidelity of pure states, lambda extremes") {
    CHECK(herm::trace_norm(HermitianOperator{diag2(1.0, -1.0)}) == doctest::Approx(2.0));

    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::VectorXcd psi = random_unit_vector(3, rng), phi = random_unit_vector(3, rng);
        HermitianOperator pp{psi * psi.adjoint()}, qq{phi * phi.adjoint()};
        double overlap = std::abs((psi.adjoint() * phi)(0, 0));
        CHECK(herm::fidelity(pp, qq) == doctest::Approx(overlap).epsilon(1e-9));
    }

    auto [lmax, lmin] = herm::lambda_extremes(HermitianOperator{diag3(0.0, 0.2, 0.8)});
    CHECK(lmax == doctest::Approx(0.8));
    CHECK(lmin == doctest::Approx(0.2));
    CHECK_THROWS_AS(herm::lambda_extremes(HermitianOperator{Matrix::Zero(2, 2)}), ZeroOperatorError);
}

TEST_CASE("density operator validation") {
    CHECK_NOTHROW(herm::DensityOperator{diag2(0.5, 0.5)});
    CHECK_THROWS_AS(herm::DensityOperator{diag2(0.7, 0.7)}, NotPsdError);
    CHECK_THROWS_AS(herm::DensityOperator{diag2(1.5, -0.5)}, NotPsdError);
}
