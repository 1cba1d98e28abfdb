#include "pinn/pde.hpp"

#include <algorithm>

#include "pinn/rng.hpp"

namespace pinn {

Problem problem_from_name(const std::string& name) {
    if (name == "nws") return Problem::nws;
    if (name == "allen-cahn") return Problem::allen_cahn;
    throw ConfigError("unknown problem '" + name + "' (expected nws|allen-cahn)");
}

const char* problem_name(Problem p) {
    switch (p) {
    case Problem::nws: return "nws";
    case Problem::allen_cahn: return "allen-cahn";
    }
    return "?";
}

void validate(const ParabolicPde& pde) {
    if (!(pde.a < pde.b)) throw ConfigError("pde: spatial interval requires a < b");
    if (!(pde.t_final > 0.0)) throw ConfigError("pde: time horizon requires T > 0");
    if (pde.p < 2) throw ConfigError("pde: exponent p must be >= 2");
    if (!pde.initial || !pde.boundary_left || !pde.boundary_right)
        throw ConfigError("pde: initial and boundary functions are required");

    if (std::abs(pde.initial(pde.a) - pde.boundary_left(0.0)) > 1e-12)
        throw ConfigError("pde: f(a) and g(0) disagree at the left corner");
    if (std::abs(pde.initial(pde.b) - pde.boundary_right(0.0)) > 1e-12)
        throw ConfigError("pde: f(b) and h(0) disagree at the right corner");

    if (pde.exact) {
        constexpr int kProbes = 64;
        for (int i = 0; i <= kProbes; ++i) {
            double x = pde.a + (pde.b - pde.a) * i / kProbes;
            double t = pde.t_final * i / kProbes;
            if (std::abs(pde.exact(x, 0.0) - pde.initial(x)) > 1e-9)
                throw ConfigError("pde: exact(x,0) disagrees with f(x)");
            if (std::abs(pde.exact(pde.a, t) - pde.boundary_left(t)) > 1e-9)
                throw ConfigError("pde: exact(a,t) disagrees with g(t)");
            if (std::abs(pde.exact(pde.b, t) - pde.boundary_right(t)) > 1e-9)
                throw ConfigError("pde: exact(b,t) disagrees with h(t)");
        }
    }
}

ParabolicPde nws_problem(const NwsParams& params) {
    const double lambda = params.lambda;

    // reject any lambda whose denominator -2 + 3*lambda*(1 - e^{2t})
    // vanishes or crosses zero inside the horizon
    constexpr int kScan = 2048;
    double prev = 0.0;
    for (int i = 0; i <= kScan; ++i) {
        double t = 1.0 * i / kScan;
        double denom = -2.0 + 3.0 * lambda * (1.0 - std::exp(2.0 * t));
        if (std::abs(denom) < 1e-9 || (i > 0 && std::signbit(denom) != std::signbit(prev)))
            throw ConfigError("nws: lambda makes the solution denominator vanish in [0, T]");
        prev = denom;
    }

    ParabolicPde pde;
    pde.name = "nws";
    pde.m = 1.0;
    pde.n = 2.0;
    pde.o = -3.0;
    pde.p = 2;
    pde.a = 0.0;
    pde.b = 1.0;
    pde.t_final = 1.0;
    pde.initial = [lambda](double) { return lambda; };
    pde.boundary_left = [lambda](double t) { return exact_nws(lambda, 0.0, t); };
    pde.boundary_right = [lambda](double t) { return exact_nws(lambda, 1.0, t); };
    pde.exact = [lambda](double x, double t) { return exact_nws(lambda, x, t); };
    pde.exact_jet = [lambda](const ad::Jet4& x, const ad::Jet4& t) {
        return exact_nws_impl(lambda, x, t);
    };
    validate(pde);
    return pde;
}

ParabolicPde allen_cahn_problem() {
    ParabolicPde pde;
    pde.name = "allen-cahn";
    pde.m = 1.0;
    pde.n = 1.0;
    pde.o = -1.0;
    pde.p = 3;
    pde.a = 0.0;
    pde.b = 1.0;
    pde.t_final = 1.0;
    pde.initial = [](double x) { return exact_allen_cahn(x, 0.0); };
    pde.boundary_left = [](double t) { return exact_allen_cahn(0.0, t); };
    pde.boundary_right = [](double t) { return exact_allen_cahn(1.0, t); };
    pde.exact = [](double x, double t) { return exact_allen_cahn(x, t); };
    pde.exact_jet = [](const ad::Jet4& x, const ad::Jet4& t) {
        return exact_allen_cahn_impl(x, t);
    };
    validate(pde);
    return pde;
}

double exact_residual_probe(const ParabolicPde& pde,
                            std::span<const std::pair<double, double>> points) {
    if (!pde.exact_jet) throw UsageError("exact_residual_probe: pde has no exact solution");
    double worst = 0.0;
    for (auto [x, t] : points) {
        auto [tj, xj] = ad::jet_seed(t, x);
        ad::Jet4 u = pde.exact_jet(xj, tj);
        worst = std::max(worst, std::abs(residual(pde, u, x, t)));
    }
    return worst;
}

std::vector<std::pair<double, double>> random_domain_points(const ParabolicPde& pde,
                                                            std::size_t count,
                                                            std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::pair<double, double>> pts;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        pts.emplace_back(rng.uniform(pde.a, pde.b), rng.uniform(0.0, pde.t_final));
    return pts;
}

} // namespace pinn
