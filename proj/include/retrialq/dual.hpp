#pragma once

#include <cmath>

namespace retrialq {

/// Second-order dual number: carries f, f' and f'' through arithmetic, so a
/// closed-form expression evaluated on Dual2 yields its exact analytic
/// derivatives (no finite differencing).
struct Dual2 {
    double v = 0;   // value
    double d1 = 0;  // first derivative
    double d2 = 0;  // second derivative

    constexpr Dual2() = default;
    constexpr Dual2(double value) : v(value) {}
    constexpr Dual2(double value, double first, double second) : v(value), d1(first), d2(second) {}

    static constexpr Dual2 variable(double x) { return Dual2(x, 1.0, 0.0); }
};

constexpr Dual2 operator+(Dual2 a, Dual2 b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
constexpr Dual2 operator-(Dual2 a, Dual2 b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
constexpr Dual2 operator-(Dual2 a) { return {-a.v, -a.d1, -a.d2}; }

constexpr Dual2 operator*(Dual2 a, Dual2 b) {
    return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2 * a.d1 * b.d1 + a.v * b.d2};
}

constexpr Dual2 operator/(Dual2 a, Dual2 b) {
    double q = a.v / b.v;
    double q1 = (a.d1 - q * b.d1) / b.v;
    double q2 = (a.d2 - 2 * q1 * b.d1 - q * b.d2) / b.v;
    return {q, q1, q2};
}

constexpr Dual2& operator+=(Dual2& a, Dual2 b) { return a = a + b; }
constexpr Dual2& operator-=(Dual2& a, Dual2 b) { return a = a - b; }
constexpr Dual2& operator*=(Dual2& a, Dual2 b) { return a = a * b; }
constexpr Dual2& operator/=(Dual2& a, Dual2 b) { return a = a / b; }

inline Dual2 pow(Dual2 a, int k) {
    Dual2 r(1.0);
    for (int i = 0; i < k; ++i) r *= a;
    return r;
}

inline double value(double x) { return x; }
inline double value(const Dual2& x) { return x.v; }

}  // namespace retrialq
