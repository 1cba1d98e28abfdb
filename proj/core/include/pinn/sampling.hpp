#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

#include "pinn/pde.hpp"

namespace pinn {

struct SamplePoint {
    double t;
    double x;
    double target;
};

/// Training point sets: initial (t = 0), boundary (x in {a, b}) with their
/// exact targets, and unlabeled interior collocation points.
struct SampleSet {
    std::vector<SamplePoint> initial;
    std::vector<SamplePoint> boundary;
    std::vector<std::pair<double, double>> collocation; ///< (t, x)
    std::uint64_t seed = 0;
};

/// Independent uniform draws from the documented generator (see rng.hpp):
/// initial x in [a, b] with target f(x); boundary t in [0, T], nb/2 points
/// per side (left side first) with targets g/h; collocation strictly inside
/// the open rectangle. Identical arguments give bitwise-identical sets.
SampleSet sample_uniform(const ParabolicPde& pde, std::size_t n0, std::size_t nb, std::size_t nc,
                         std::uint64_t seed);

/// CSV dump, columns kind,t,x,target (target empty for collocation rows).
void dump_csv(const SampleSet& samples, const std::filesystem::path& path);

/// Regular evaluation grid: x_i = a + i*h, t_j = j*dt, endpoints inclusive.
struct EvalGrid {
    double h = 0.0;
    double dt = 0.0;
    std::vector<double> xs;
    std::vector<double> ts;
};

/// Inclusive-endpoint grid over [a, b] x [0, t_max] (t_max defaults to the
/// pde horizon). The final point snaps to the exact endpoint when the step
/// divides the interval to within 1e-12.
EvalGrid make_grid(double h, double dt, const ParabolicPde& pde,
                   std::optional<double> t_max = std::nullopt);

} // namespace pinn
