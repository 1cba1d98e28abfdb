#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "pinn/ad/jet.hpp"
#include "pinn/ad/tape.hpp"
#include "pinn/errors.hpp"

namespace pinn {

enum class Problem { nws, allen_cahn };

Problem problem_from_name(const std::string& name);
const char* problem_name(Problem p);

/// One instance of the nonlinear parabolic equation
///   u_t = m u_xx + n u + o u^p + eta(x, t, u, u_x)
/// on [a, b] x [0, T], with initial data f, boundary data g (left) and
/// h (right), and an optional closed-form solution.
struct ParabolicPde {
    std::string name;
    double m = 0.0;
    double n = 0.0;
    double o = 0.0;
    int p = 2;
    /// eta(x, t, u, u_x); a null function means eta == 0.
    std::function<double(double, double, double, double)> eta;
    double a = 0.0;
    double b = 1.0;
    double t_final = 1.0;
    std::function<double(double)> initial;        ///< f(x)
    std::function<double(double)> boundary_left;  ///< g(t)
    std::function<double(double)> boundary_right; ///< h(t)
    std::function<double(double, double)> exact;  ///< exact(x, t), may be null
    /// exact solution over jets, for residual probes; may be null
    std::function<ad::Jet4(const ad::Jet4&, const ad::Jet4&)> exact_jet;
};

/// Checks interval/horizon sanity and corner compatibility f(a)=g(0),
/// f(b)=h(0); when an exact solution is present, cross-checks it against
/// f, g, h on sampled points.
void validate(const ParabolicPde& pde);

struct NwsParams {
    double lambda = 0.1;
};

/// u_t = u_xx + 2u - 3u^2 with constant initial state lambda; the
/// boundary values follow the closed-form solution.
ParabolicPde nws_problem(const NwsParams& params);

/// Allen-Cahn u_t = u_xx + u - u^3 with the tanh kink data; the wave
/// number is kept at the printed 0.3536 rather than 1/(2*sqrt(2)), which
/// leaves a bounded ~1.3e-5 intrinsic residual in the closed form.
ParabolicPde allen_cahn_problem();

inline constexpr double kAcWaveNumber = 0.3536;
inline constexpr double kAcSpeed = 0.75;

/// -2*lambda*e^{2t} / (-2 + 3*lambda*(1 - e^{2t})); independent of x.
template <class S>
S exact_nws_impl(double lambda, const S& /*x*/, const S& t) {
    using std::exp;
    S e2t = exp(2.0 * t);
    S denom = -2.0 + 3.0 * lambda * (1.0 - e2t);
    if (std::abs(ad::value_of(denom)) < 1e-12)
        throw NumericError("nws exact solution: denominator vanished");
    return (-2.0 * lambda) * e2t / denom;
}

inline double exact_nws(double lambda, double x, double t) {
    return exact_nws_impl(lambda, x, t);
}

/// -1/2 + 1/2 tanh(0.3536 x - 0.75 t)
template <class S>
S exact_allen_cahn_impl(const S& x, const S& t) {
    using std::tanh;
    return -0.5 + 0.5 * tanh(kAcWaveNumber * x - kAcSpeed * t);
}

inline double exact_allen_cahn(double x, double t) { return exact_allen_cahn_impl(x, t); }

/// Residual of Eq-form u_t - m u_xx - n u - o u^p - eta, evaluated from the
/// jet lanes of u at (x, t). With S = Var the expression lands on the tape,
/// so gradients flow through u_t, u_x and u_xx.
template <class S>
S residual(const ParabolicPde& pde, const ad::Jet<S>& u, double x, double t) {
    if (!std::isfinite(ad::value_of(u.val)) || !std::isfinite(ad::value_of(u.dt)) ||
        !std::isfinite(ad::value_of(u.dx)) || !std::isfinite(ad::value_of(u.dxx)))
        throw NumericError("residual: non-finite jet components");
    S r = u.dt - pde.m * u.dxx - pde.n * u.val - pde.o * ad::ipow(u.val, pde.p);
    if (pde.eta) {
        if constexpr (std::is_same_v<S, double>) {
            r = r - pde.eta(x, t, u.val, u.dx);
        } else {
            throw UsageError("residual: a source-term callback cannot be tape-recorded");
        }
    }
    return r;
}

/// Pushes jets through the closed-form solution and returns the largest
/// |residual| over the given (x, t) points.
double exact_residual_probe(const ParabolicPde& pde,
                            std::span<const std::pair<double, double>> points);

/// Seeded uniform points in the interior of the space-time domain.
std::vector<std::pair<double, double>> random_domain_points(const ParabolicPde& pde,
                                                            std::size_t count,
                                                            std::uint64_t seed);

} // namespace pinn
