#pragma once

#include <cmath>
#include <string>

#include "pinn/ad/jet.hpp"
#include "pinn/ad/tape.hpp"
#include "pinn/errors.hpp"

namespace pinn {

enum class Activation { gelu, tanh, sigmoid, relu };

Activation activation_from_name(const std::string& name);
const char* activation_name(Activation a);

inline constexpr double kInvSqrt2 = 0.7071067811865476;
inline constexpr double kInvSqrt2Pi = 0.3989422804014327;

namespace detail {
inline double constant_like(double, double c) { return c; }
inline ad::Var constant_like(ad::Var sibling, double c) { return sibling.tape->constant(c); }
} // namespace detail

/// g(v), g'(v), g''(v) of the selected activation, generically over the
/// scalar type (double, or Var when recording on a tape). Second
/// derivatives feed u_xx, so these are the analytic forms, not
/// approximations; GELU in particular is x*Phi(x) with Phi via erf.
template <class S>
struct ActCoeffs {
    S g, g1, g2;
};

template <class S>
ActCoeffs<S> activation_coeffs(Activation act, const S& v) {
    using std::erf;
    using std::exp;
    using std::tanh;
    switch (act) {
    case Activation::gelu: {
        S cdf = 0.5 * (erf(v * kInvSqrt2) + 1.0);
        S pdf = kInvSqrt2Pi * exp(-0.5 * (v * v));
        return {v * cdf, cdf + v * pdf, pdf * (2.0 - v * v)};
    }
    case Activation::tanh: {
        S th = tanh(v);
        S g1 = 1.0 - th * th;
        return {th, g1, -2.0 * (th * g1)};
    }
    case Activation::sigmoid: {
        S s = 1.0 / (1.0 + exp(-v));
        S g1 = s * (1.0 - s);
        return {s, g1, g1 * (1.0 - 2.0 * s)};
    }
    case Activation::relu: {
        bool pos = ad::value_of(v) > 0.0;
        S zero = detail::constant_like(v, 0.0);
        return {pos ? v : zero, detail::constant_like(v, pos ? 1.0 : 0.0), zero};
    }
    }
    throw UsageError("unknown activation");
}

/// Value plus first three derivatives, double-only fast path for the
/// batched trainer (the backward pass through the jet chain needs g''').
struct ActDerivs {
    double g, g1, g2, g3;
};

inline ActDerivs gelu_derivs(double v) {
    double cdf = 0.5 * (std::erf(v * kInvSqrt2) + 1.0);
    double pdf = kInvSqrt2Pi * std::exp(-0.5 * (v * v));
    return {v * cdf, cdf + v * pdf, pdf * (2.0 - v * v), pdf * v * (v * v - 4.0)};
}

inline ActDerivs tanh_derivs(double v) {
    double th = std::tanh(v);
    double g1 = 1.0 - th * th;
    return {th, g1, -2.0 * (th * g1), -2.0 * g1 * (1.0 - 3.0 * th * th)};
}

inline ActDerivs sigmoid_derivs(double v) {
    double s = 1.0 / (1.0 + std::exp(-v));
    double g1 = s * (1.0 - s);
    double one_m_2s = 1.0 - 2.0 * s;
    return {s, g1, g1 * one_m_2s, g1 * (one_m_2s * one_m_2s - 2.0 * g1)};
}

inline ActDerivs relu_derivs(double v) {
    bool pos = v > 0.0;
    return {pos ? v : 0.0, pos ? 1.0 : 0.0, 0.0, 0.0};
}

inline ActDerivs activation_derivs(Activation act, double v) {
    switch (act) {
    case Activation::gelu: return gelu_derivs(v);
    case Activation::tanh: return tanh_derivs(v);
    case Activation::sigmoid: return sigmoid_derivs(v);
    case Activation::relu: return relu_derivs(v);
    }
    throw UsageError("unknown activation");
}

// x * Phi(x), Phi the standard normal CDF
double gelu(double x);
double gelu_d1(double x);
double gelu_d2(double x);

} // namespace pinn
