#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "pinn/ad/jet.hpp"
#include "pinn/ad/tape.hpp"

namespace pinn::ad {

/// Relative discrepancy with a unit floor, so near-zero pairs compare
/// absolutely instead of blowing up.
double rel_error(double a, double b);

struct DerivCheckReport {
    double max_rel_first = 0.0;  ///< tape gradient + jet dt/dx lanes vs central differences
    double max_rel_second = 0.0; ///< jet dxx lane vs second central differences
    double worst() const { return std::max(max_rel_first, max_rel_second); }
};

/// Cross-checks every derivative route of a scalar function against finite
/// differences at one point. F must be callable as f(span<const S>) -> S for
/// S in {double, Var, Jet4}.
///
/// First derivatives use (f(p+h)-f(p-h))/2h, second derivatives
/// (f(p+h)-2f(p)+f(p-h))/h^2.
template <class F>
DerivCheckReport derivative_check(F&& f, std::span<const double> point, double step) {
    if (step <= 0.0) throw UsageError("derivative_check: step must be positive");
    if (point.empty()) throw UsageError("derivative_check: empty point");

    const std::size_t n = point.size();
    DerivCheckReport report;

    std::vector<double> plus(point.begin(), point.end());
    std::vector<double> minus(point.begin(), point.end());
    const double f0 = f(std::span<const double>(plus));

    Tape tape;
    std::vector<Var> leaves;
    leaves.reserve(n);
    for (double v : point) leaves.push_back(tape.leaf(v));
    Var root = f(std::span<const Var>(leaves));
    std::vector<double> grad = tape.gradient(root);

    for (std::size_t i = 0; i < n; ++i) {
        plus[i] = point[i] + step;
        minus[i] = point[i] - step;
        double fp = f(std::span<const double>(plus));
        double fm = f(std::span<const double>(minus));
        plus[i] = point[i];
        minus[i] = point[i];

        double fd1 = (fp - fm) / (2.0 * step);
        double fd2 = (fp - 2.0 * f0 + fm) / (step * step);

        // seed both first-order lanes at once; they do not interact
        std::vector<Jet4> jets(n);
        for (std::size_t j = 0; j < n; ++j) jets[j] = Jet4{point[j], 0.0, 0.0, 0.0};
        jets[i].dt = 1.0;
        jets[i].dx = 1.0;
        Jet4 out = f(std::span<const Jet4>(jets));

        report.max_rel_first = std::max({report.max_rel_first,
                                         rel_error(out.dt, fd1),
                                         rel_error(out.dx, fd1),
                                         rel_error(grad[i], fd1)});
        report.max_rel_second = std::max(report.max_rel_second, rel_error(out.dxx, fd2));
    }
    return report;
}

} // namespace pinn::ad
