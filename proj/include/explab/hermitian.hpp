// hermitian.hpp — dense Hermitian operators: eigendecompositions, matrix
// functions on the support, Kubo–Ando geometric means, tensor powers, norms
// and fidelity. Everything is immutable after construction and pure.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <utility>

#include "explab/errors.hpp"
#include "explab/extreal.hpp"

namespace explab::herm {

using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermTol = 1e-10;     // relative Hermiticity tolerance
inline constexpr double kSupportTol = 1e-12;  // eigenvalue support cut, relative to lambda_max
inline constexpr double kTraceTol = 1e-9;

/// Dense complex Hermitian matrix. Construction verifies
/// ||M - M†||_max <= herm_tol * ||M||_max and then symmetrizes.
class HermitianOperator {
public:
    explicit HermitianOperator(Matrix m, double herm_tol = kHermTol) {
        if (m.rows() != m.cols() || m.rows() == 0)
            throw DimensionMismatchError("HermitianOperator: matrix must be square and non-empty");
        const double scale = m.cwiseAbs().maxCoeff();
        const double dev = (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
        if (dev > herm_tol * std::max(scale, 1.0))
            throw NotHermitianError("HermitianOperator: input is not Hermitian within tolerance");
        m_ = 0.5 * (m + m.adjoint().eval());
    }

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix& matrix() const { return m_; }
    double trace() const { return m_.trace().real(); }

private:
    Matrix m_;
};

struct EigenSystem {
    RealVector eigenvalues;  // ascending
    Matrix eigenvectors;     // unitary, columns match eigenvalues
};

inline EigenSystem eig_herm(const HermitianOperator& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
    if (es.info() != Eigen::Success)
        throw EigenSolverError("eig_herm: eigen-solver did not converge");
    return {es.eigenvalues(), es.eigenvectors()};
}

/// Orthonormal basis of the support of a PSD operator. rank may be zero.
struct SupportProjector {
    int dim = 0;
    int rank = 0;
    Matrix basis;  // dim x rank, orthonormal columns

    Matrix projector() const { return basis * basis.adjoint(); }
};

namespace detail {

inline void require_psd(const RealVector& eigs, double eps_supp, const char* who) {
    const double lmax = eigs.size() ? eigs.maxCoeff() : 0.0;
    const double floor_ = -eps_supp * std::max(lmax, 1.0);
    if (eigs.minCoeff() < floor_)
        throw NotPsdError(std::string(who) + ": operator has a negative eigenvalue beyond tolerance");
}

inline double support_cut(const RealVector& eigs, double eps_supp) {
    const double lmax = eigs.maxCoeff();
    return eps_supp * std::max(lmax, 0.0);
}

} // namespace detail

inline SupportProjector support_projection(const HermitianOperator& a, double eps_supp = kSupportTol) {
    EigenSystem es = eig_herm(a);
    detail::require_psd(es.eigenvalues, eps_supp, "support_projection");
    const double cut = detail::support_cut(es.eigenvalues, eps_supp);
    int rank = 0;
    for (int i = 0; i < es.eigenvalues.size(); ++i)
        if (es.eigenvalues(i) > cut) ++rank;
    SupportProjector p;
    p.dim = a.dim();
    p.rank = rank;
    p.basis = es.eigenvectors.rightCols(rank);
    return p;
}

/// f applied to eigenvalues above the support cut; zero eigenvalues map to 0.
/// This is the logn convention: logn 0 := 0, and 0^t := 0 for any real t.
template <class F>
Matrix apply_on_support(const HermitianOperator& a, F&& f, double eps_supp = kSupportTol) {
    EigenSystem es = eig_herm(a);
    detail::require_psd(es.eigenvalues, eps_supp, "apply_on_support");
    const double cut = detail::support_cut(es.eigenvalues, eps_supp);
    RealVector d(es.eigenvalues.size());
    for (int i = 0; i < d.size(); ++i)
        d(i) = es.eigenvalues(i) > cut ? f(es.eigenvalues(i)) : 0.0;
    return es.eigenvectors * d.asDiagonal() * es.eigenvectors.adjoint();
}

inline HermitianOperator mat_log_on_support(const HermitianOperator& a, double eps_supp = kSupportTol) {
    return HermitianOperator(apply_on_support(a, [](double x) { return std::log(x); }, eps_supp));
}

inline HermitianOperator mat_pow_on_support(const HermitianOperator& a, double t, double eps_supp = kSupportTol) {
    return HermitianOperator(apply_on_support(a, [t](double x) { return std::pow(x, t); }, eps_supp));
}

inline bool is_positive_definite(const HermitianOperator& a, double eps_supp = kSupportTol) {
    EigenSystem es = eig_herm(a);
    const double lmax = es.eigenvalues.maxCoeff();
    return lmax > 0.0 && es.eigenvalues.minCoeff() > eps_supp * lmax;
}

/// Kubo–Ando alpha-geometric mean: geometric_mean(A, B, alpha) is
/// B^{1/2} (B^{-1/2} A B^{-1/2})^alpha B^{1/2}, i.e. sigma #_alpha rho with
/// A = rho, B = sigma. Singular inputs are handled by deflation onto a common
/// support when the supports agree; otherwise SupportMismatch is thrown.
inline HermitianOperator geometric_mean(const HermitianOperator& a, const HermitianOperator& b,
                                        double alpha = 0.5, double eps_supp = kSupportTol) {
    if (a.dim() != b.dim())
        throw DimensionMismatchError("geometric_mean: dimension mismatch");
    if (alpha < 0.0 || alpha > 1.0)
        throw OutOfRangeError("geometric_mean: alpha must lie in [0,1]");

    auto core = [alpha, eps_supp](const Matrix& am, const Matrix& bm) {
        Eigen::SelfAdjointEigenSolver<Matrix> esb(bm);
        RealVector be = esb.eigenvalues();
        RealVector bh(be.size()), bmh(be.size());
        for (int i = 0; i < be.size(); ++i) {
            bh(i) = std::sqrt(be(i));
            bmh(i) = 1.0 / bh(i);
        }
        Matrix v = esb.eigenvectors();
        Matrix b_half = v * bh.asDiagonal() * v.adjoint();
        Matrix b_mhalf = v * bmh.asDiagonal() * v.adjoint();
        Matrix mid = b_mhalf * am * b_mhalf;
        Eigen::SelfAdjointEigenSolver<Matrix> esm(0.5 * (mid + mid.adjoint().eval()));
        RealVector me = esm.eigenvalues();
        RealVector mp(me.size());
        const double mcut = eps_supp * std::max(me.maxCoeff(), 0.0);
        for (int i = 0; i < me.size(); ++i)
            mp(i) = me(i) > mcut ? std::pow(me(i), alpha) : 0.0;
        Matrix mid_pow = esm.eigenvectors() * mp.asDiagonal() * esm.eigenvectors().adjoint();
        Matrix g = b_half * mid_pow * b_half;
        return Matrix(0.5 * (g + g.adjoint().eval()));
    };

    if (is_positive_definite(a, eps_supp) && is_positive_definite(b, eps_supp))
        return HermitianOperator(core(a.matrix(), b.matrix()));

    SupportProjector pa = support_projection(a, eps_supp);
    SupportProjector pb = support_projection(b, eps_supp);
    if (pa.rank != pb.rank ||
        (pa.projector() - pb.projector()).cwiseAbs().maxCoeff() > 1e-8)
        throw SupportMismatchError(
            "geometric_mean: supports differ and neither operator is definite");
    if (pa.rank == 0) return HermitianOperator(Matrix::Zero(a.dim(), a.dim()));
    const Matrix& v = pa.basis;
    Matrix ac = v.adjoint() * a.matrix() * v;
    Matrix bc = v.adjoint() * b.matrix() * v;
    Matrix g = core(0.5 * (ac + ac.adjoint().eval()), 0.5 * (bc + bc.adjoint().eval()));
    return HermitianOperator(v * g * v.adjoint());
}

inline HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b) {
    const int da = a.dim(), db = b.dim();
    Matrix out(da * db, da * db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
            out.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
    return HermitianOperator(std::move(out));
}

inline HermitianOperator kron_power(const HermitianOperator& a, int n, long dim_cap = 4096) {
    if (n < 1) throw OutOfRangeError("kron_power: n must be >= 1");
    double need = std::pow(static_cast<double>(a.dim()), n);
    if (need > static_cast<double>(dim_cap))
        throw CapExceededError("kron_power: required dimension " + std::to_string(static_cast<long long>(need)) +
                               " exceeds cap " + std::to_string(dim_cap));
    HermitianOperator out = a;
    for (int k = 1; k < n; ++k) out = kron(out, a);
    return out;
}

inline double trace_norm(const HermitianOperator& a) {
    EigenSystem es = eig_herm(a);
    return es.eigenvalues.cwiseAbs().sum();
}

/// Uhlmann fidelity Tr (rho^{1/2} sigma rho^{1/2})^{1/2} for PSD inputs.
inline double fidelity(const HermitianOperator& rho, const HermitianOperator& sigma,
                       double eps_supp = kSupportTol) {
    if (rho.dim() != sigma.dim())
        throw DimensionMismatchError("fidelity: dimension mismatch");
    Matrix rh = apply_on_support(rho, [](double x) { return std::sqrt(x); }, eps_supp);
    {   // PSD check on sigma
        EigenSystem es = eig_herm(sigma);
        detail::require_psd(es.eigenvalues, eps_supp, "fidelity");
    }
    Matrix m = rh * sigma.matrix() * rh;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint().eval()));
    const double cut = eps_supp * std::max(es.eigenvalues().maxCoeff(), 0.0);
    double f = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) > cut) f += std::sqrt(es.eigenvalues()(i));
    return f;
}

/// (lambda_max, smallest nonzero eigenvalue). The second entry uses the
/// support cut; a zero operator has no nonzero eigenvalue.
inline std::pair<double, double> lambda_extremes(const HermitianOperator& a,
                                                 double eps_supp = kSupportTol) {
    EigenSystem es = eig_herm(a);
    const double lmax = es.eigenvalues.maxCoeff();
    const double cut = eps_supp * std::max(lmax, 0.0);
    double lmin_nz = 0.0;
    bool found = false;
    for (int i = 0; i < es.eigenvalues.size(); ++i) {
        double l = es.eigenvalues(i);
        if (l > cut && (!found || l < lmin_nz)) {
            lmin_nz = l;
            found = true;
        }
    }
    if (!found) throw ZeroOperatorError("lambda_extremes: operator has no nonzero eigenvalue");
    return {lmax, lmin_nz};
}

/// Density operator: PSD within trace_tol and unit trace within trace_tol.
class DensityOperator {
public:
    explicit DensityOperator(HermitianOperator op, double trace_tol = kTraceTol)
        : op_(std::move(op)) {
        EigenSystem es = eig_herm(op_);
        if (es.eigenvalues.minCoeff() < -trace_tol)
            throw NotPsdError("DensityOperator: negative eigenvalue beyond tolerance");
        if (std::abs(op_.trace() - 1.0) > trace_tol)
            throw NotPsdError("DensityOperator: trace differs from 1 beyond tolerance");
    }
    explicit DensityOperator(Matrix m, double trace_tol = kTraceTol)
        : DensityOperator(HermitianOperator(std::move(m)), trace_tol) {}

    int dim() const { return op_.dim(); }
    const HermitianOperator& op() const { return op_; }
    const Matrix& matrix() const { return op_.matrix(); }

private:
    HermitianOperator op_;
};

inline double commutator_norm(const HermitianOperator& a, const HermitianOperator& b) {
    Matrix c = a.matrix() * b.matrix() - b.matrix() * a.matrix();
    return c.cwiseAbs().maxCoeff();
}

/// Common eigenbasis of two commuting Hermitian operators: eigendecompose A,
/// then diagonalize B inside each (clustered) eigenspace of A.
inline Matrix simultaneous_eigenbasis(const HermitianOperator& a, const HermitianOperator& b,
                                      double comm_tol = 1e-10) {
    if (a.dim() != b.dim()) throw DimensionMismatchError("simultaneous_eigenbasis: dimension mismatch");
    const double scale = std::max({a.matrix().cwiseAbs().maxCoeff(), b.matrix().cwiseAbs().maxCoeff(), 1.0});
    if (commutator_norm(a, b) > comm_tol * scale)
        throw NotSemiClassicalError("simultaneous_eigenbasis: operators do not commute within tolerance");
    EigenSystem ea = eig_herm(a);
    Matrix u = ea.eigenvectors;
    const double spread = ea.eigenvalues(ea.eigenvalues.size() - 1) - ea.eigenvalues(0);
    const double cluster_tol = 1e-9 * std::max(spread, 1.0);
    int start = 0;
    while (start < a.dim()) {
        int stop = start + 1;
        while (stop < a.dim() && ea.eigenvalues(stop) - ea.eigenvalues(stop - 1) <= cluster_tol) ++stop;
        if (stop - start > 1) {
            Matrix block = u.middleCols(start, stop - start);
            Matrix bc = block.adjoint() * b.matrix() * block;
            Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (bc + bc.adjoint().eval()));
            u.middleCols(start, stop - start) = block * es.eigenvectors();
        }
        start = stop;
    }
    return u;
}

} // namespace explab::herm
