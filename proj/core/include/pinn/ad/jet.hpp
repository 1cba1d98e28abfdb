#pragma once

#include <cmath>
#include <utility>

#include "pinn/errors.hpp"

namespace pinn::ad {

inline double value_of(double x) { return x; }

/// Truncated-Taylor jet carrying a value plus the (d/dt, d/dx, d2/dx2)
/// tangents of a space-time field. The scalar type S is double for plain
/// evaluation and Var when the computation is recorded on a tape.
///
/// The two directions are independent: dt is first-order only, dxx is the
/// pure second spatial derivative. Mixed terms (u_tx, u_tt) are not carried.
template <class S>
struct Jet {
    S val{};
    S dt{};
    S dx{};
    S dxx{};
};

using Jet4 = Jet<double>;

template <class S>
double value_of(const Jet<S>& j) {
    return value_of(j.val);
}

/// Canonical seeds: t -> (t,1,0,0), x -> (x,0,1,0).
inline std::pair<Jet4, Jet4> jet_seed(double t, double x) {
    if (!std::isfinite(t) || !std::isfinite(x))
        throw UsageError("jet_seed: inputs must be finite");
    return {Jet4{t, 1.0, 0.0, 0.0}, Jet4{x, 0.0, 1.0, 0.0}};
}

template <class S>
Jet<S> operator+(const Jet<S>& a, const Jet<S>& b) {
    return {a.val + b.val, a.dt + b.dt, a.dx + b.dx, a.dxx + b.dxx};
}

template <class S>
Jet<S> operator-(const Jet<S>& a, const Jet<S>& b) {
    return {a.val - b.val, a.dt - b.dt, a.dx - b.dx, a.dxx - b.dxx};
}

template <class S>
Jet<S> operator-(const Jet<S>& a) {
    return {-a.val, -a.dt, -a.dx, -a.dxx};
}

template <class S>
Jet<S> operator+(const Jet<S>& a, double c) {
    return {a.val + c, a.dt, a.dx, a.dxx};
}

template <class S>
Jet<S> operator+(double c, const Jet<S>& a) {
    return a + c;
}

template <class S>
Jet<S> operator-(const Jet<S>& a, double c) {
    return {a.val - c, a.dt, a.dx, a.dxx};
}

template <class S>
Jet<S> operator-(double c, const Jet<S>& a) {
    return {c - a.val, -a.dt, -a.dx, -a.dxx};
}

// (ab)'' = a''b + 2a'b' + ab''
template <class S>
Jet<S> operator*(const Jet<S>& a, const Jet<S>& b) {
    return {a.val * b.val,
            a.dt * b.val + a.val * b.dt,
            a.dx * b.val + a.val * b.dx,
            a.dxx * b.val + 2.0 * (a.dx * b.dx) + a.val * b.dxx};
}

template <class S>
Jet<S> operator*(const Jet<S>& a, double c) {
    return {a.val * c, a.dt * c, a.dx * c, a.dxx * c};
}

template <class S>
Jet<S> operator*(double c, const Jet<S>& a) {
    return a * c;
}

// Solves a = q*b lane by lane, reusing the lower-order quotient lanes.
template <class S>
Jet<S> operator/(const Jet<S>& a, const Jet<S>& b) {
    if (value_of(b.val) == 0.0)
        throw NumericError("jet division by a jet with zero value");
    Jet<S> q;
    q.val = a.val / b.val;
    q.dt = (a.dt - q.val * b.dt) / b.val;
    q.dx = (a.dx - q.val * b.dx) / b.val;
    q.dxx = (a.dxx - 2.0 * (q.dx * b.dx) - q.val * b.dxx) / b.val;
    return q;
}

template <class S>
Jet<S> operator/(const Jet<S>& a, double c) {
    if (c == 0.0) throw NumericError("jet division by zero scalar");
    return {a.val / c, a.dt / c, a.dx / c, a.dxx / c};
}

template <class S>
Jet<S> operator/(double c, const Jet<S>& b) {
    if (value_of(b.val) == 0.0)
        throw NumericError("jet division by a jet with zero value");
    Jet<S> q;
    q.val = c / b.val;
    q.dt = -(q.val * b.dt) / b.val;
    q.dx = -(q.val * b.dx) / b.val;
    q.dxx = (-2.0 * (q.dx * b.dx) - q.val * b.dxx) / b.val;
    return q;
}

/// Chain rule through a unary g given g(v), g'(v), g''(v):
/// out = (g, g'*dt, g'*dx, g''*dx^2 + g'*dxx).
template <class S>
Jet<S> chain(const Jet<S>& v, const S& g, const S& g1, const S& g2) {
    return {g, g1 * v.dt, g1 * v.dx, g2 * (v.dx * v.dx) + g1 * v.dxx};
}

/// Integer power by repeated multiplication, valid for negative bases.
template <class T>
T ipow(const T& base, int p) {
    if (p < 1) throw UsageError("ipow: exponent must be >= 1");
    T acc = base;
    for (int i = 1; i < p; ++i) acc = acc * base;
    return acc;
}

template <class S>
Jet<S> exp(const Jet<S>& a) {
    using std::exp;
    S e = exp(a.val);
    return chain(a, e, e, e);
}

template <class S>
Jet<S> tanh(const Jet<S>& a) {
    using std::tanh;
    S th = tanh(a.val);
    S g1 = 1.0 - th * th;
    S g2 = -2.0 * (th * g1);
    return chain(a, th, g1, g2);
}

// erf'(v) = 2/sqrt(pi) * e^(-v^2), erf''(v) = -2v * erf'(v)
template <class S>
Jet<S> erf(const Jet<S>& a) {
    using std::erf;
    using std::exp;
    constexpr double two_over_sqrt_pi = 1.1283791670955126;
    S er = erf(a.val);
    S g1 = two_over_sqrt_pi * exp(-(a.val * a.val));
    S g2 = -2.0 * (a.val * g1);
    return chain(a, er, g1, g2);
}

} // namespace pinn::ad
