// classical.hpp — nonnegative weight vectors over a finite alphabet.

#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "explab/errors.hpp"

namespace explab {

inline constexpr double kNormTol = 1e-9;

/// Nonnegative weights on a finite alphabet; optionally a normalized
/// probability vector. Supports are exact: an entry belongs to the support
/// iff it is strictly positive.
class ClassicalWeight {
public:
    explicit ClassicalWeight(std::vector<double> w, bool require_normalized = false,
                             double norm_tol = kNormTol)
        : w_(std::move(w)) {
        if (w_.empty()) throw DimensionMismatchError("ClassicalWeight: empty alphabet");
        for (auto& x : w_) {
            if (x < 0.0) {
                if (x < -1e-14) throw NotPsdError("ClassicalWeight: negative weight");
                x = 0.0;
            }
        }
        normalized_ = std::abs(total() - 1.0) <= norm_tol;
        if (require_normalized && !normalized_)
            throw NotPsdError("ClassicalWeight: weights do not sum to 1 within tolerance");
    }

    static ClassicalWeight uniform(std::size_t size) {
        return ClassicalWeight(std::vector<double>(size, 1.0 / static_cast<double>(size)));
    }

    std::size_t size() const { return w_.size(); }
    double operator[](std::size_t i) const { return w_[i]; }
    const std::vector<double>& weights() const { return w_; }
    bool normalized() const { return normalized_; }

    double total() const { return std::accumulate(w_.begin(), w_.end(), 0.0); }

    std::vector<std::size_t> support() const {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] > 0.0) s.push_back(i);
        return s;
    }

    bool support_contained_in(const ClassicalWeight& other) const {
        if (other.size() != size()) throw DimensionMismatchError("support_contained_in: size mismatch");
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] > 0.0 && other[i] <= 0.0) return false;
        return true;
    }

    bool support_disjoint_from(const ClassicalWeight& other) const {
        if (other.size() != size()) throw DimensionMismatchError("support_disjoint_from: size mismatch");
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] > 0.0 && other[i] > 0.0) return false;
        return true;
    }

    ClassicalWeight normalized_copy() const {
        std::vector<double> w = w_;
        double t = total();
        if (t <= 0.0) throw ZeroOperatorError("normalized_copy: zero weight vector");
        for (auto& x : w) x /= t;
        return ClassicalWeight(std::move(w));
    }

    ClassicalWeight scaled(double t) const {
        std::vector<double> w = w_;
        for (auto& x : w) x *= t;
        return ClassicalWeight(std::move(w));
    }

private:
    std::vector<double> w_;
    bool normalized_ = false;
};

inline ClassicalWeight mix(const std::vector<ClassicalWeight>& states,
                           const std::vector<double>& coeffs) {
    if (states.empty() || states.size() != coeffs.size())
        throw DimensionMismatchError("mix: states/coefficients mismatch");
    std::vector<double> w(states[0].size(), 0.0);
    for (std::size_t k = 0; k < states.size(); ++k) {
        if (states[k].size() != w.size()) throw DimensionMismatchError("mix: alphabet mismatch");
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += coeffs[k] * states[k][i];
    }
    return ClassicalWeight(std::move(w));
}

/// (1 - theta) w + theta * uniform; full support for theta > 0.
inline ClassicalWeight smooth(const ClassicalWeight& w, double theta) {
    if (theta < 0.0 || theta >= 1.0) throw OutOfRangeError("smooth: theta must lie in [0,1)");
    std::vector<double> out(w.size());
    const double u = theta / static_cast<double>(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = (1.0 - theta) * w[i] + u;
    return ClassicalWeight(std::move(out));
}

} // namespace explab
