// rng.hpp — seeded random states for property tests and the verify suites.
// GUE-style Hermitian draws, shifted and trace-normalized.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

namespace explab {

using Rng = std::mt19937_64;

inline Eigen::MatrixXcd random_gue(int dim, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            m(i, j) = std::complex<double>(g(rng), g(rng));
    return 0.5 * (m + m.adjoint().eval());
}

/// Random density matrix: GUE, shifted to PSD with a relative eigenvalue
/// floor, then trace-normalized. floor > 0 gives a positive definite state.
inline Eigen::MatrixXcd random_density_matrix(int dim, Rng& rng, double floor = 0.05) {
    Eigen::MatrixXcd h = random_gue(dim, rng);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    double lo = es.eigenvalues().minCoeff();
    double hi = es.eigenvalues().maxCoeff();
    double shift = -lo + floor * (hi - lo + 1.0);
    Eigen::MatrixXcd a = h + shift * Eigen::MatrixXcd::Identity(dim, dim);
    return a / a.trace().real();
}

inline Eigen::VectorXcd random_unit_vector(int dim, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = std::complex<double>(g(rng), g(rng));
    return v / v.norm();
}

/// Random probability vector with entries bounded below by floor/size.
inline std::vector<double> random_distribution(int size, Rng& rng, double floor = 0.05) {
    std::uniform_real_distribution<double> u(floor, 1.0);
    std::vector<double> w(size);
    double s = 0.0;
    for (auto& x : w) { x = u(rng); s += x; }
    for (auto& x : w) x /= s;
    return w;
}

} // namespace explab
