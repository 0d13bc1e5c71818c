#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace vds {

// Forward-mode dual number carrying N derivative channels alongside the
// value. Seeding channel i with 1 on input x_i yields d(output)/d(x_i) in
// channel i after evaluation.
template <std::size_t N>
struct Dual {
    double v = 0.0;
    std::array<double, N> d{};

    constexpr Dual() = default;
    constexpr Dual(double value) : v(value) { d.fill(0.0); }

    static constexpr Dual seeded(double value, std::size_t channel) {
        Dual r(value);
        r.d[channel] = 1.0;
        return r;
    }

    constexpr Dual& operator+=(const Dual& o) {
        v += o.v;
        for (std::size_t i = 0; i < N; ++i) d[i] += o.d[i];
        return *this;
    }
    constexpr Dual& operator-=(const Dual& o) {
        v -= o.v;
        for (std::size_t i = 0; i < N; ++i) d[i] -= o.d[i];
        return *this;
    }
    constexpr Dual& operator*=(const Dual& o) { return *this = *this * o; }
    constexpr Dual& operator/=(const Dual& o) { return *this = *this / o; }

    friend constexpr Dual operator-(const Dual& a) {
        Dual r;
        r.v = -a.v;
        for (std::size_t i = 0; i < N; ++i) r.d[i] = -a.d[i];
        return r;
    }
    friend constexpr Dual operator+(const Dual& a, const Dual& b) {
        Dual r;
        r.v = a.v + b.v;
        for (std::size_t i = 0; i < N; ++i) r.d[i] = a.d[i] + b.d[i];
        return r;
    }
    friend constexpr Dual operator-(const Dual& a, const Dual& b) {
        Dual r;
        r.v = a.v - b.v;
        for (std::size_t i = 0; i < N; ++i) r.d[i] = a.d[i] - b.d[i];
        return r;
    }
    friend constexpr Dual operator*(const Dual& a, const Dual& b) {
        Dual r;
        r.v = a.v * b.v;
        for (std::size_t i = 0; i < N; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
        return r;
    }
    friend constexpr Dual operator/(const Dual& a, const Dual& b) {
        Dual r;
        const double inv = 1.0 / b.v;
        r.v = a.v * inv;
        for (std::size_t i = 0; i < N; ++i) r.d[i] = (a.d[i] - r.v * b.d[i]) * inv;
        return r;
    }

    // Mixed double/dual arithmetic keeps constants cheap.
    friend constexpr Dual operator+(const Dual& a, double b) {
        Dual r = a;
        r.v += b;
        return r;
    }
    friend constexpr Dual operator+(double a, const Dual& b) { return b + a; }
    friend constexpr Dual operator-(const Dual& a, double b) {
        Dual r = a;
        r.v -= b;
        return r;
    }
    friend constexpr Dual operator-(double a, const Dual& b) { return -(b - a); }
    friend constexpr Dual operator*(const Dual& a, double b) {
        Dual r;
        r.v = a.v * b;
        for (std::size_t i = 0; i < N; ++i) r.d[i] = a.d[i] * b;
        return r;
    }
    friend constexpr Dual operator*(double a, const Dual& b) { return b * a; }
    friend constexpr Dual operator/(const Dual& a, double b) { return a * (1.0 / b); }
    friend constexpr Dual operator/(double a, const Dual& b) {
        Dual r;
        const double inv = 1.0 / b.v;
        r.v = a * inv;
        const double s = -r.v * inv;
        for (std::size_t i = 0; i < N; ++i) r.d[i] = s * b.d[i];
        return r;
    }

    // Comparisons act on values; used only to select C1-smooth branches.
    friend constexpr bool operator<(const Dual& a, const Dual& b) { return a.v < b.v; }
    friend constexpr bool operator<(const Dual& a, double b) { return a.v < b; }
    friend constexpr bool operator<(double a, const Dual& b) { return a < b.v; }
    friend constexpr bool operator>(const Dual& a, const Dual& b) { return a.v > b.v; }
    friend constexpr bool operator>(const Dual& a, double b) { return a.v > b; }
    friend constexpr bool operator>(double a, const Dual& b) { return a > b.v; }
    friend constexpr bool operator<=(const Dual& a, double b) { return a.v <= b; }
    friend constexpr bool operator>=(const Dual& a, double b) { return a.v >= b; }
};

template <std::size_t N>
inline Dual<N> sin(const Dual<N>& a) {
    Dual<N> r;
    r.v = std::sin(a.v);
    const double c = std::cos(a.v);
    for (std::size_t i = 0; i < N; ++i) r.d[i] = c * a.d[i];
    return r;
}

template <std::size_t N>
inline Dual<N> cos(const Dual<N>& a) {
    Dual<N> r;
    r.v = std::cos(a.v);
    const double s = -std::sin(a.v);
    for (std::size_t i = 0; i < N; ++i) r.d[i] = s * a.d[i];
    return r;
}

template <std::size_t N>
inline Dual<N> tan(const Dual<N>& a) {
    Dual<N> r;
    r.v = std::tan(a.v);
    const double s = 1.0 + r.v * r.v;
    for (std::size_t i = 0; i < N; ++i) r.d[i] = s * a.d[i];
    return r;
}

template <std::size_t N>
inline Dual<N> atan(const Dual<N>& a) {
    Dual<N> r;
    r.v = std::atan(a.v);
    const double s = 1.0 / (1.0 + a.v * a.v);
    for (std::size_t i = 0; i < N; ++i) r.d[i] = s * a.d[i];
    return r;
}

template <std::size_t N>
inline Dual<N> sqrt(const Dual<N>& a) {
    Dual<N> r;
    r.v = std::sqrt(a.v);
    const double s = 0.5 / r.v;
    for (std::size_t i = 0; i < N; ++i) r.d[i] = s * a.d[i];
    return r;
}

template <std::size_t N>
inline double value(const Dual<N>& a) {
    return a.v;
}
inline double value(double a) { return a; }

}  // namespace vds
