#include "vds/params.hpp"

#include <cmath>
#include <sstream>

namespace vds {

std::array<double, kNumDtParams> flatten(const ParamSet& p) {
    std::array<double, kNumDtParams> c{};
    c[0] = p.g;
    c[1] = p.h;
    c[2] = p.l_f;
    c[3] = p.l_r;
    c[4] = p.m;
    c[5] = p.s_f;
    c[6] = p.s_r;
    c[7] = p.J_x;
    c[8] = p.J_y;
    c[9] = p.J_z;
    for (int i = 0; i < 4; ++i) c[10 + i] = p.J_w[i];
    for (int i = 0; i < 4; ++i) c[14 + i] = p.r[i];
    c[18] = p.d_f;
    c[19] = p.d_r;
    c[20] = p.k_f;
    c[21] = p.k_r;
    c[22] = p.mu;
    c[23] = p.tire_lat.B;
    c[24] = p.tire_lat.C;
    c[25] = p.tire_lat.D;
    c[26] = p.tire_lat.E;
    c[27] = p.tire_lon.B;
    c[28] = p.tire_lon.C;
    c[29] = p.tire_lon.D;
    c[30] = p.tire_lon.E;
    for (int i = 0; i < 4; ++i) c[31 + i] = p.S_off[i];
    return c;
}

std::array<double, kNumStParams> flatten(const StParams& p) {
    return {p.c_alpha_f, p.c_alpha_r, p.J_z, p.l_f, p.l_r, p.m, p.v};
}

namespace {

void require_positive(std::vector<Violation>& out, const char* name, double v) {
    if (!(v > 0.0) || !std::isfinite(v))
        out.push_back({name, v, std::string(name) + " must be strictly positive"});
}

void check_mf(std::vector<Violation>& out, const char* prefix, const MagicFormulaCoeffs& c) {
    const std::string pre(prefix);
    if (!(c.B > 0.0)) out.push_back({pre + ".B", c.B, "B must be > 0"});
    if (!(c.C > 0.0 && c.C <= 3.0)) out.push_back({pre + ".C", c.C, "C out of (0,3]"});
    if (!(c.D > 0.0)) out.push_back({pre + ".D", c.D, "D must be > 0"});
    if (!(c.E <= 1.0)) out.push_back({pre + ".E", c.E, "E must be <= 1"});
}

}  // namespace

std::vector<Violation> validate_params(const ParamSet& p) {
    std::vector<Violation> out;
    require_positive(out, "m", p.m);
    require_positive(out, "g", p.g);
    require_positive(out, "h", p.h);
    require_positive(out, "l_f", p.l_f);
    require_positive(out, "l_r", p.l_r);
    require_positive(out, "s_f", p.s_f);
    require_positive(out, "s_r", p.s_r);
    require_positive(out, "J_x", p.J_x);
    require_positive(out, "J_y", p.J_y);
    require_positive(out, "J_z", p.J_z);
    require_positive(out, "k_f", p.k_f);
    require_positive(out, "k_r", p.k_r);
    require_positive(out, "d_f", p.d_f);
    require_positive(out, "d_r", p.d_r);
    for (int i = 0; i < 4; ++i) {
        const std::string w = kWheelNames[i];
        if (!(p.J_w[i] > 0.0))
            out.push_back({"J_w_" + w, p.J_w[i], "J_w must be strictly positive"});
        if (!(p.r[i] > 0.0)) out.push_back({"r_" + w, p.r[i], "r must be strictly positive"});
        if (!std::isfinite(p.S_off[i]))
            out.push_back({"S_" + w, p.S_off[i], "S must be finite"});
    }
    if (!(p.mu > 0.0 && p.mu <= 2.0)) out.push_back({"mu", p.mu, "mu out of (0,2]"});
    check_mf(out, "tire_lat", p.tire_lat);
    check_mf(out, "tire_lon", p.tire_lon);
    return out;
}

std::vector<Violation> validate_params(const StParams& p) {
    std::vector<Violation> out;
    require_positive(out, "m", p.m);
    require_positive(out, "J_z", p.J_z);
    require_positive(out, "l_f", p.l_f);
    require_positive(out, "l_r", p.l_r);
    require_positive(out, "c_alpha_f", p.c_alpha_f);
    require_positive(out, "c_alpha_r", p.c_alpha_r);
    if (!(p.v >= 1.0)) out.push_back({"v", p.v, "v below v_min = 1 m/s"});
    return out;
}

ParamSet reference_params() {
    ParamSet p;
    p.m = 1600.0;
    p.g = 9.81;
    p.h = 0.55;
    p.l_f = 1.2;
    p.l_r = 1.5;
    p.s_f = 1.55;
    p.s_r = 1.55;
    p.J_x = 550.0;
    p.J_y = 1800.0;
    p.J_z = 2300.0;
    p.J_w = {1.2, 1.2, 1.2, 1.2};
    p.r = {0.31, 0.31, 0.31, 0.31};
    p.k_f = 32000.0;
    p.k_r = 30000.0;
    p.d_f = 4500.0;
    p.d_r = 4200.0;
    p.mu = 1.0;
    p.tire_lat = {8.5, 1.55, 3600.0, 0.95};
    p.tire_lon = {10.0, 1.65, 4000.0, 0.90};
    p.S_off = {0.0, 0.0, 0.0, 0.0};
    return p;
}

std::string describe(const std::vector<Violation>& v) {
    std::ostringstream os;
    for (const auto& x : v)
        os << x.field << " = " << x.value << ": " << x.constraint << "\n";
    return os.str();
}

}  // namespace vds
