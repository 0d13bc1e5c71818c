#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace vds {

// Wheel index order is fixed everywhere in this project:
// 0 = front-left, 1 = front-right, 2 = rear-left, 3 = rear-right.
enum Wheel : int { kFL = 0, kFR = 1, kRL = 2, kRR = 3 };
inline constexpr std::array<const char*, 4> kWheelNames = {"fl", "fr", "rl", "rr"};

// Pacejka Magic Formula coefficient set, templated so dual numbers can flow
// through the tire model.
template <class S>
struct MagicFormulaCoeffsT {
    S B;  // stiffness factor [-]
    S C;  // shape factor [-]
    S D;  // peak factor [N]
    S E;  // curvature factor [-]
};
using MagicFormulaCoeffs = MagicFormulaCoeffsT<double>;

// Full physical parameter set of the double-track model.
template <class S>
struct ParamSetT {
    S m;               // vehicle mass [kg]
    S g;               // gravitational constant [m/s^2]
    S h;               // CoG height above ground [m]
    S l_f, l_r;        // CoG-to-axle distances [m]
    S s_f, s_r;        // track widths [m]
    S J_x, J_y, J_z;   // body moments of inertia [kg m^2]
    std::array<S, 4> J_w;  // wheel spin inertias [kg m^2]
    std::array<S, 4> r;    // wheel radii [m]
    S k_f, k_r;        // suspension stiffness per wheel [N/m]
    S d_f, d_r;        // suspension damping per wheel [N s/m]
    S mu;              // road-tire friction coefficient [-]
    MagicFormulaCoeffsT<S> tire_lat;
    MagicFormulaCoeffsT<S> tire_lon;
    std::array<S, 4> S_off;  // per-wheel lateral force offsets [N]
};
using ParamSet = ParamSetT<double>;

// Flattened parameter vector c. Ordering is fixed, grouped, and alphabetical
// within each group; sensitivity column k always refers to this ordering.
inline constexpr std::size_t kNumDtParams = 35;
inline constexpr std::array<const char*, kNumDtParams> kDtParamNames = {
    // body geometry and mass
    "g", "h", "l_f", "l_r", "m", "s_f", "s_r",
    // body inertias
    "J_x", "J_y", "J_z",
    // wheel spin inertias
    "J_w_fl", "J_w_fr", "J_w_rl", "J_w_rr",
    // wheel radii
    "r_fl", "r_fr", "r_rl", "r_rr",
    // suspension
    "d_f", "d_r", "k_f", "k_r",
    // friction
    "mu",
    // Magic Formula, lateral then longitudinal
    "B_lat", "C_lat", "D_lat", "E_lat", "B_lon", "C_lon", "D_lon", "E_lon",
    // per-wheel force offsets
    "S_fl", "S_fr", "S_rl", "S_rr"};

std::array<double, kNumDtParams> flatten(const ParamSet& p);

template <class S>
ParamSetT<S> unflatten_params(std::span<const S, kNumDtParams> c) {
    ParamSetT<S> p;
    p.g = c[0];
    p.h = c[1];
    p.l_f = c[2];
    p.l_r = c[3];
    p.m = c[4];
    p.s_f = c[5];
    p.s_r = c[6];
    p.J_x = c[7];
    p.J_y = c[8];
    p.J_z = c[9];
    for (int i = 0; i < 4; ++i) p.J_w[i] = c[10 + i];
    for (int i = 0; i < 4; ++i) p.r[i] = c[14 + i];
    p.d_f = c[18];
    p.d_r = c[19];
    p.k_f = c[20];
    p.k_r = c[21];
    p.mu = c[22];
    p.tire_lat = {c[23], c[24], c[25], c[26]};
    p.tire_lon = {c[27], c[28], c[29], c[30]};
    for (int i = 0; i < 4; ++i) p.S_off[i] = c[31 + i];
    return p;
}

// Linear single-track model parameters. v is treated as a model parameter.
template <class S>
struct StParamsT {
    S m;    // [kg]
    S J_z;  // [kg m^2]
    S l_f, l_r;              // [m]
    S c_alpha_f, c_alpha_r;  // axle cornering stiffnesses [N/rad]
    S v;                     // longitudinal speed [m/s]
};
using StParams = StParamsT<double>;

inline constexpr std::size_t kNumStParams = 7;
inline constexpr std::array<const char*, kNumStParams> kStParamNames = {
    "c_alpha_f", "c_alpha_r", "J_z", "l_f", "l_r", "m", "v"};

std::array<double, kNumStParams> flatten(const StParams& p);

template <class S>
StParamsT<S> unflatten_st_params(std::span<const S, kNumStParams> c) {
    StParamsT<S> p;
    p.c_alpha_f = c[0];
    p.c_alpha_r = c[1];
    p.J_z = c[2];
    p.l_f = c[3];
    p.l_r = c[4];
    p.m = c[5];
    p.v = c[6];
    return p;
}

// One violated invariant of a parameter set.
struct Violation {
    std::string field;
    double value;
    std::string constraint;
};

// Returns an empty list iff every ParamSet invariant holds.
std::vector<Violation> validate_params(const ParamSet& p);
std::vector<Violation> validate_params(const StParams& p);

// Shipped reference parameter set (mid-size passenger car scale, constructed
// to satisfy every invariant and to be understeering).
ParamSet reference_params();

std::string describe(const std::vector<Violation>& v);

}  // namespace vds
