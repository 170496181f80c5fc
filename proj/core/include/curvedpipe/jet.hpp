#pragma once

#include <cmath>

namespace curvedpipe {

/// Value with first partial derivatives in (r, theta).
struct Dual {
  double v = 0.0;
  double dr = 0.0;
  double dt = 0.0;

  constexpr Dual() = default;
  constexpr Dual(double value) : v(value) {}  // NOLINT: implicit constant promotion
  constexpr Dual(double value, double d_r, double d_t) : v(value), dr(d_r), dt(d_t) {}
};

constexpr Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.dr + b.dr, a.dt + b.dt}; }
constexpr Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.dr - b.dr, a.dt - b.dt}; }
constexpr Dual operator-(const Dual& a) { return {-a.v, -a.dr, -a.dt}; }
constexpr Dual operator*(const Dual& a, const Dual& b) {
  return {a.v * b.v, a.dr * b.v + a.v * b.dr, a.dt * b.v + a.v * b.dt};
}
constexpr Dual operator/(const Dual& a, const Dual& b) {
  const double inv = 1.0 / b.v;
  const double q = a.v * inv;
  return {q, (a.dr - q * b.dr) * inv, (a.dt - q * b.dt) * inv};
}
inline Dual& operator+=(Dual& a, const Dual& b) { return a = a + b; }
inline Dual& operator-=(Dual& a, const Dual& b) { return a = a - b; }
inline Dual cos(const Dual& a) { return {std::cos(a.v), -std::sin(a.v) * a.dr, -std::sin(a.v) * a.dt}; }
inline Dual sin(const Dual& a) { return {std::sin(a.v), std::cos(a.v) * a.dr, std::cos(a.v) * a.dt}; }

/// Value with first and second partial derivatives in (r, theta).
/// Used to differentiate closed-form fields exactly.
struct Jet2 {
  double v = 0.0;
  double r = 0.0;
  double t = 0.0;
  double rr = 0.0;
  double rt = 0.0;
  double tt = 0.0;

  constexpr Jet2() = default;
  constexpr Jet2(double value) : v(value) {}  // NOLINT: implicit constant promotion

  static constexpr Jet2 variable_r(double value) {
    Jet2 j(value);
    j.r = 1.0;
    return j;
  }
  static constexpr Jet2 variable_theta(double value) {
    Jet2 j(value);
    j.t = 1.0;
    return j;
  }
};

namespace detail {
// g(f) given g(f.v), g'(f.v), g''(f.v)
constexpr Jet2 chain(const Jet2& f, double g0, double g1, double g2) {
  Jet2 out;
  out.v = g0;
  out.r = g1 * f.r;
  out.t = g1 * f.t;
  out.rr = g2 * f.r * f.r + g1 * f.rr;
  out.rt = g2 * f.r * f.t + g1 * f.rt;
  out.tt = g2 * f.t * f.t + g1 * f.tt;
  return out;
}
}  // namespace detail

constexpr Jet2 operator+(const Jet2& a, const Jet2& b) {
  Jet2 o;
  o.v = a.v + b.v; o.r = a.r + b.r; o.t = a.t + b.t;
  o.rr = a.rr + b.rr; o.rt = a.rt + b.rt; o.tt = a.tt + b.tt;
  return o;
}
constexpr Jet2 operator-(const Jet2& a) {
  Jet2 o;
  o.v = -a.v; o.r = -a.r; o.t = -a.t; o.rr = -a.rr; o.rt = -a.rt; o.tt = -a.tt;
  return o;
}
constexpr Jet2 operator-(const Jet2& a, const Jet2& b) { return a + (-b); }
constexpr Jet2 operator*(const Jet2& a, const Jet2& b) {
  Jet2 o;
  o.v = a.v * b.v;
  o.r = a.r * b.v + a.v * b.r;
  o.t = a.t * b.v + a.v * b.t;
  o.rr = a.rr * b.v + 2.0 * a.r * b.r + a.v * b.rr;
  o.rt = a.rt * b.v + a.r * b.t + a.t * b.r + a.v * b.rt;
  o.tt = a.tt * b.v + 2.0 * a.t * b.t + a.v * b.tt;
  return o;
}
constexpr Jet2 reciprocal(const Jet2& a) {
  const double i = 1.0 / a.v;
  return detail::chain(a, i, -i * i, 2.0 * i * i * i);
}
constexpr Jet2 operator/(const Jet2& a, const Jet2& b) { return a * reciprocal(b); }
inline Jet2 cos(const Jet2& a) { return detail::chain(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }
inline Jet2 sin(const Jet2& a) { return detail::chain(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }
inline Jet2 exp(const Jet2& a) {
  const double e = std::exp(a.v);
  return detail::chain(a, e, e, e);
}

}  // namespace curvedpipe
