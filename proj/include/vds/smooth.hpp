#pragma once

#include "vds/dual.hpp"

namespace vds {

// C1 helpers shared by the tire and controller code. The sensitivity system
// differentiates through every branch here, so each piecewise definition
// matches value and first derivative at its joints.

// Positive, C1 approximation of |v| with minimum eps/2 at v = 0.
// Exactly |v| for |v| >= eps.
template <class S>
S soft_abs(const S& v, double eps) {
    if (v >= eps) return v;
    if (v <= -eps) return -v;
    return 0.5 * eps + (v * v) / (2.0 * eps);
}

// C1 hinge: identical to x for x >= w, exactly 0 for x <= 0, cubic blend on
// (0, w). Used to keep vertical tire loads non-negative.
template <class S>
S smooth_hinge(const S& x, double w) {
    if (x >= w) return x;
    if (x <= 0.0) return S(0.0);
    // p(s) = -s^3/w^2 + 2 s^2 / w; p(w)=w, p'(w)=1, p(0)=p'(0)=0.
    return (x * x) * (2.0 / w) - (x * x * x) * (1.0 / (w * w));
}

// C1 symmetric saturation at +/-limit. Identity on |x| <= (1-b)*limit,
// constant beyond (1+b)*limit, quadratic blend in between (b = 0.2).
template <class S>
S smooth_sat(const S& x, double limit) {
    constexpr double b = 0.2;
    const double lo = (1.0 - b) * limit;
    const double hi = (1.0 + b) * limit;
    if (x >= hi) return S(limit);
    if (x <= -hi) return S(-limit);
    if (x >= lo) {
        const S t = x - lo;
        return lo + t - t * t * (1.0 / (4.0 * b * limit));
    }
    if (x <= -lo) {
        const S t = -x - lo;
        return -(lo + t - t * t * (1.0 / (4.0 * b * limit)));
    }
    return x;
}

}  // namespace vds
