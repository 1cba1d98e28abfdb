#include "pinn/sampling.hpp"

#include <cmath>
#include <fstream>

#include "pinn/csv.hpp"
#include "pinn/errors.hpp"
#include "pinn/rng.hpp"

namespace pinn {

namespace {
constexpr std::uint64_t kInitialStream = 1;
constexpr std::uint64_t kBoundaryStream = 2;
constexpr std::uint64_t kCollocationStream = 3;
} // namespace

SampleSet sample_uniform(const ParabolicPde& pde, std::size_t n0, std::size_t nb, std::size_t nc,
                         std::uint64_t seed) {
    if (n0 < 1 || nb < 1 || nc < 1) throw ConfigError("sample counts must be >= 1");
    if (nb % 2 != 0) throw ConfigError("boundary count must be even (split across both sides)");

    SampleSet set;
    set.seed = seed;
    Rng base(seed);

    Rng init_rng = base.derive(kInitialStream);
    set.initial.reserve(n0);
    for (std::size_t i = 0; i < n0; ++i) {
        double x = init_rng.uniform(pde.a, pde.b);
        set.initial.push_back({0.0, x, pde.initial(x)});
    }

    Rng bound_rng = base.derive(kBoundaryStream);
    set.boundary.reserve(nb);
    for (std::size_t i = 0; i < nb / 2; ++i) {
        double t = bound_rng.uniform(0.0, pde.t_final);
        set.boundary.push_back({t, pde.a, pde.boundary_left(t)});
    }
    for (std::size_t i = 0; i < nb / 2; ++i) {
        double t = bound_rng.uniform(0.0, pde.t_final);
        set.boundary.push_back({t, pde.b, pde.boundary_right(t)});
    }

    Rng col_rng = base.derive(kCollocationStream);
    set.collocation.reserve(nc);
    for (std::size_t i = 0; i < nc; ++i) {
        double t = col_rng.uniform_open(0.0, pde.t_final);
        double x = col_rng.uniform_open(pde.a, pde.b);
        set.collocation.emplace_back(t, x);
    }
    return set;
}

void dump_csv(const SampleSet& samples, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw IoError("cannot open " + path.string());
    os << "kind,t,x,target\n";
    for (const auto& p : samples.initial)
        os << "initial," << format_g17(p.t) << ',' << format_g17(p.x) << ','
           << format_g17(p.target) << '\n';
    for (const auto& p : samples.boundary)
        os << "boundary," << format_g17(p.t) << ',' << format_g17(p.x) << ','
           << format_g17(p.target) << '\n';
    for (const auto& [t, x] : samples.collocation)
        os << "collocation," << format_g17(t) << ',' << format_g17(x) << ",\n";
    if (!os) throw IoError("write failed: " + path.string());
}

EvalGrid make_grid(double h, double dt, const ParabolicPde& pde, std::optional<double> t_max) {
    const double t_end = t_max.value_or(pde.t_final);
    if (!(h > 0.0) || h > pde.b - pde.a)
        throw ConfigError("grid: need 0 < h <= b - a");
    if (!(dt > 0.0) || dt > t_end) throw ConfigError("grid: need 0 < dt <= t_max");

    // epsilon guard so steps like 0.004 that divide the interval exactly in
    // real arithmetic produce the full count despite rounding
    auto count = [](double span, double step) {
        return static_cast<std::size_t>(std::floor(span / step + 1e-9)) + 1;
    };
    EvalGrid grid;
    grid.h = h;
    grid.dt = dt;
    const std::size_t nx = count(pde.b - pde.a, h);
    const std::size_t nt = count(t_end, dt);
    grid.xs.reserve(nx);
    grid.ts.reserve(nt);
    for (std::size_t i = 0; i < nx; ++i) grid.xs.push_back(pde.a + static_cast<double>(i) * h);
    for (std::size_t j = 0; j < nt; ++j) grid.ts.push_back(static_cast<double>(j) * dt);
    if (std::abs(grid.xs.back() - pde.b) <= 1e-12) grid.xs.back() = pde.b;
    if (std::abs(grid.ts.back() - t_end) <= 1e-12) grid.ts.back() = t_end;
    return grid;
}

} // namespace pinn
