// scalar_opt.hpp — 1-D golden-section search and bisection used by the divergence
// and Legendre-transform evaluators. All objectives here are unimodal on the
// bracket (suprema of concave transforms of convex cumulant functions).

#pragma once

#include <cmath>
#include <utility>

#include "explab/errors.hpp"

namespace explab {

struct ScalarOpt {
    double x = 0.0;
    double value = 0.0;
};

/// Maximize a unimodal f on [lo, hi] by golden-section search.
template <class F>
ScalarOpt golden_max(F&& f, double lo, double hi, double xtol = 1e-12, int max_iter = 200) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < max_iter && (b - a) > xtol; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    double xm = 0.5 * (a + b);
    return {xm, f(xm)};
}

template <class F>
ScalarOpt golden_min(F&& f, double lo, double hi, double xtol = 1e-12, int max_iter = 200) {
    auto neg = [&](double x) { return -f(x); };
    ScalarOpt r = golden_max(neg, lo, hi, xtol, max_iter);
    return {r.x, -r.value};
}

/// Maximize a unimodal f on [lo, +inf): expand the upper bracket geometrically
/// until f stops improving (or cap is hit), then golden-section.
template <class F>
ScalarOpt expanding_golden_max(F&& f, double lo, double hi0, double cap, double xtol = 1e-12) {
    double hi = hi0;
    double best = f(hi);
    while (hi < cap) {
        double next = 2.0 * hi;
        if (next > cap) next = cap;
        double v = f(next);
        double grew = v - best;
        hi = next;
        best = std::max(best, v);
        if (grew <= 0.0 && hi > hi0 * 4.0) break;
    }
    return golden_max(f, lo, hi, xtol);
}

/// Root of a monotone f on [lo, hi] with f(lo), f(hi) of opposite sign.
template <class F>
double bisect_root(F&& f, double lo, double hi, double xtol = 1e-13, int max_iter = 200) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0))
        throw OutOfRangeError("bisect_root: no sign change on bracket");
    for (int it = 0; it < max_iter && (hi - lo) > xtol; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid; flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace explab
