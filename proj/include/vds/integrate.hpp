#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace vds {

// Workspace for the fixed-step classical Runge-Kutta scheme, sized once per
// run to keep the step allocation-free.
struct Rk4Workspace {
    std::vector<double> k1, k2, k3, k4, tmp;
    void resize(std::size_t n) {
        k1.resize(n);
        k2.resize(n);
        k3.resize(n);
        k4.resize(n);
        tmp.resize(n);
    }
};

// Classical 4th-order Runge-Kutta step. `rhs(t, x, dx)` is evaluated at the
// stage times t, t+h/2, t+h; exogenous inputs inside rhs are sampled at the
// stage times, so smooth references keep the scheme's order.
template <class Rhs>
void rk4_step(Rhs&& rhs, std::vector<double>& x, double t, double h, Rk4Workspace& ws) {
    if (!(h > 0.0)) throw std::invalid_argument("rk4_step: h must be > 0");
    const std::size_t n = x.size();
    ws.resize(n);
    rhs(t, x, ws.k1);
    for (std::size_t i = 0; i < n; ++i) ws.tmp[i] = x[i] + 0.5 * h * ws.k1[i];
    rhs(t + 0.5 * h, ws.tmp, ws.k2);
    for (std::size_t i = 0; i < n; ++i) ws.tmp[i] = x[i] + 0.5 * h * ws.k2[i];
    rhs(t + 0.5 * h, ws.tmp, ws.k3);
    for (std::size_t i = 0; i < n; ++i) ws.tmp[i] = x[i] + h * ws.k3[i];
    rhs(t + h, ws.tmp, ws.k4);
    for (std::size_t i = 0; i < n; ++i)
        x[i] += (h / 6.0) * (ws.k1[i] + 2.0 * ws.k2[i] + 2.0 * ws.k3[i] + ws.k4[i]);
}

inline bool all_finite(const std::vector<double>& x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace vds
