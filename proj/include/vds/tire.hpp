#pragma once

#include <array>
#include <span>

#include "vds/geometry.hpp"
#include "vds/params.hpp"
#include "vds/smooth.hpp"
#include "vds/state.hpp"

namespace vds {

// Default regularization speed for the slip quantities [m/s].
inline constexpr double kSlipVeps = 0.5;
// Blend width of the non-negative load clamp [N].
inline constexpr double kLoadClampWidth = 1.0;

// Pacejka Magic Formula:
//   F = mu * load_scale * D * sin(C * atan(B x - E (B x - atan(B x)))) + S.
// mu and the load ratio scale the peak factor multiplicatively; S shifts the
// force curve vertically. Odd in the slip argument for S = 0.
template <class S>
S magic_formula(const S& slip, const MagicFormulaCoeffsT<S>& c, const S& mu,
                const S& load_scale, const S& offset) {
    using std::atan;
    using std::sin;
    const S bx = c.B * slip;
    const S arg = bx - c.E * (bx - atan(bx));
    return mu * load_scale * c.D * sin(c.C * atan(arg)) + offset;
}

// Slope of the Magic Formula at zero slip with the S-offset excluded:
// mu * load_scale * B * C * D.
template <class S>
S cornering_stiffness(const MagicFormulaCoeffsT<S>& c, const S& mu, const S& load_scale) {
    return mu * load_scale * c.B * c.C * c.D;
}

// Wheel-frame contact point velocities and spin state of one wheel.
template <class S>
struct WheelKinematicsT {
    S v_x_w;  // [m/s]
    S v_y_w;  // [m/s]
    S omega;  // [rad/s]
    S r;      // [m]
};
using WheelKinematics = WheelKinematicsT<double>;

template <class S>
struct SlipT {
    S lambda;  // longitudinal slip [-]
    S alpha;   // slip angle [rad]
};

// Slip quantities with a C1 regularization of the 1/v singularity:
//   lambda = (omega r - v_x_w) / q(v_x_w),  alpha = -atan(v_y_w / q(v_x_w)),
// where q(v) = |v| for |v| >= v_eps and a positive parabola below. Both are
// finite for all inputs including standstill.
template <class S>
SlipT<S> slip_quantities(const WheelKinematicsT<S>& k, double v_eps = kSlipVeps) {
    using std::atan;
    const S q = soft_abs(k.v_x_w, v_eps);
    return {(k.omega * k.r - k.v_x_w) / q, -atan(k.v_y_w / q)};
}

template <class S>
struct LoadsT {
    std::array<S, 4> F_z;      // clamped vertical loads [N]
    std::array<S, 4> F_stat;   // stationary loads [N]
    std::array<bool, 4> lift;  // true where the clamp was active
};

// Varying vertical tire loads around the stationary loads:
//   F_z,ij = m g l'_ij / (2 (l_f + l_r)) + dF_z,ij,
//   dF_z,ij = k_ij (p phi + q theta - z_s) + d_ij (p phi_dot + q theta_dot - z_s_dot).
// Stiffness pairs with displacements and damping with rates; the lift state
// enters with negative sign so that a dropping body (z_s < 0) compresses the
// suspension and increases the load. Loads are clamped at >= 0 with a
// wheel-lift flag when the clamp activates.
template <class S>
LoadsT<S> vertical_loads(std::span<const S, kNumDtStates> x, const ParamSetT<S>& p,
                         double clamp_width = kLoadClampWidth) {
    const auto geo = geometry_tables(p);
    LoadsT<S> out;
    const S stat_scale = p.m * p.g / (2.0 * (p.l_f + p.l_r));
    for (int i = 0; i < 4; ++i) {
        out.F_stat[i] = stat_scale * geo.l_prime[i];
        const S disp = geo.p[i] * x[kPhi] + geo.q[i] * x[kTheta] - x[kZs];
        const S rate = geo.p[i] * x[kPhiDot] + geo.q[i] * x[kThetaDot] - x[kZsDot];
        const S raw = out.F_stat[i] + geo.k[i] * disp + geo.d[i] * rate;
        out.F_z[i] = smooth_hinge(raw, clamp_width);
        out.lift[i] = value(raw) < clamp_width;
    }
    return out;
}

}  // namespace vds
