#include <doctest.h>

#include <cmath>

#include "pinn/ad/derivative_check.hpp"

using pinn::ad::derivative_check;

namespace {
// callable with span<const S> for S in {double, Var, Jet4}
struct ExpFn {
    template <class Span>
    auto operator()(Span p) const {
        using std::exp;
        return exp(p[0]);
    }
};
struct CubeFn {
    template <class Span>
    auto operator()(Span p) const {
        return p[0] * p[0] * p[0];
    }
};
struct ConstFn {
    template <class Span>
    auto operator()(Span p) const {
        return p[0] * 0.0 + 4.0;
    }
};
} // namespace

TEST_CASE("exp at 0.7 agrees with central differences to 1e-6") {
    double pt[1] = {0.7};
    auto rep = derivative_check(ExpFn{}, std::span<const double>(pt, 1), 1e-4);
    CHECK(rep.max_rel_first <= 1e-6);
}

TEST_CASE("x^3 second derivative at 2 (analytic 12)") {
    double pt[1] = {2.0};
    auto rep = derivative_check(CubeFn{}, std::span<const double>(pt, 1), 1e-4);
    CHECK(rep.worst() <= 1e-5);

    // the jet's dxx lane is exactly the analytic 12 here
    pinn::ad::Jet4 x{2.0, 0.0, 1.0, 0.0};
    CHECK((x * x * x).dxx == doctest::Approx(12.0).epsilon(1e-14));
}

TEST_CASE("constants have zero discrepancy") {
    double pt[1] = {1.3};
    auto rep = derivative_check(ConstFn{}, std::span<const double>(pt, 1), 1e-4);
    CHECK(rep.max_rel_first == 0.0);
    CHECK(rep.max_rel_second == 0.0);
}

TEST_CASE("step and point preconditions") {
    double pt[1] = {0.5};
    CHECK_THROWS_AS(derivative_check(ExpFn{}, std::span<const double>(pt, 1), 0.0),
                    pinn::UsageError);
    CHECK_THROWS_AS(derivative_check(ExpFn{}, std::span<const double>(), 1e-4), pinn::UsageError);
}
