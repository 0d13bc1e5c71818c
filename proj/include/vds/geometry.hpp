#pragma once

#include <array>
#include <cmath>
#include <utility>

#include "vds/dual.hpp"
#include "vds/params.hpp"

namespace vds {

// Lever-arm tables of the force equilibria, in fixed wheel order
// (fl, fr, rl, rr). p is the lateral lever arm, q the longitudinal one,
// l_prime the opposite-axle distance entering the stationary loads.
template <class S>
struct GeometryTablesT {
    std::array<S, 4> p;
    std::array<S, 4> q;
    std::array<S, 4> l_prime;
    std::array<S, 4> k;  // per-wheel suspension stiffness
    std::array<S, 4> d;  // per-wheel suspension damping
};

template <class S>
GeometryTablesT<S> geometry_tables(const ParamSetT<S>& p) {
    GeometryTablesT<S> g;
    g.p = {p.s_f / 2.0, -(p.s_f / 2.0), p.s_r / 2.0, -(p.s_r / 2.0)};
    g.q = {p.l_f, p.l_f, -p.l_r, -p.l_r};
    g.l_prime = {p.l_r, p.l_r, p.l_f, p.l_f};
    g.k = {p.k_f, p.k_f, p.k_r, p.k_r};
    g.d = {p.d_f, p.d_f, p.d_r, p.d_r};
    return g;
}

// Ackermann conversion between the four wheel steering angles of the
// double-track model and per-axle single-track angles. The axle angle is the
// cotangent mean of the two wheel angles about the instantaneous center;
// below ~zero curvature the arithmetic mean is used (the two agree there).
namespace detail {

inline double axle_from_wheels(double d_left, double d_right) {
    constexpr double kSmall = 1e-9;
    if (std::abs(d_left) < kSmall || std::abs(d_right) < kSmall ||
        (d_left > 0) != (d_right > 0)) {
        return 0.5 * (d_left + d_right);
    }
    const double cot_mean = 0.5 * (1.0 / std::tan(d_left) + 1.0 / std::tan(d_right));
    return std::atan(1.0 / cot_mean);
}

}  // namespace detail

// Wheel angles (fl, fr, rl, rr) -> (delta_f, delta_r).
inline std::pair<double, double> ackermann_convert(const std::array<double, 4>& delta,
                                                   const ParamSet&) {
    return {detail::axle_from_wheels(delta[kFL], delta[kFR]),
            detail::axle_from_wheels(delta[kRL], delta[kRR])};
}

// Inverse mapping (axle -> wheels) for controller use. Wheel angles are laid
// out about the instantaneous center at distance L/tan(delta_axle):
// cot(d_left) = cot(d_axle) - s/(2L), cot(d_right) = cot(d_axle) + s/(2L).
// Round trip axle -> wheels -> axle is the identity.
template <class S>
std::array<S, 4> ackermann_wheels(const S& delta_f, const S& delta_r, double s_f, double s_r,
                                  double wheelbase) {
    constexpr double kSmall = 1e-9;
    std::array<S, 4> out{};
    const double L = wheelbase;
    auto pair_for = [&](const S& d, double s, S& left, S& right) {
        using std::tan;
        using std::atan;
        if (value(d) > kSmall || value(d) < -kSmall) {
            const S cot = 1.0 / tan(d);
            left = atan(1.0 / (cot - s / (2.0 * L)));
            right = atan(1.0 / (cot + s / (2.0 * L)));
        } else {
            left = d;
            right = d;
        }
    };
    pair_for(delta_f, s_f, out[kFL], out[kFR]);
    pair_for(delta_r, s_r, out[kRL], out[kRR]);
    return out;
}

}  // namespace vds
