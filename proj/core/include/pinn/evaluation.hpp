#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pinn/net.hpp"
#include "pinn/pde.hpp"
#include "pinn/sampling.hpp"

namespace pinn {

/// Absolute-error grid |exact - predicted| plus the per-time-slice norms.
/// Matrices are time-major: row = t index, column = x index.
struct MetricsReport {
    EvalGrid grid;
    Eigen::MatrixXd exact;
    Eigen::MatrixXd predicted;
    Eigen::MatrixXd error_grid;
    std::vector<std::pair<double, double>> l2_by_t;
    std::vector<std::pair<double, double>> linf_by_t;
    double max_abs_error = 0.0;
};

MetricsReport absolute_error_grid(const Network& net, const ParabolicPde& pde,
                                  const EvalGrid& grid);

/// Unnormalized Euclidean norm, sqrt(sum e_i^2) with no 1/n.
double l2_norm(std::span<const double> errors);
double linf_norm(std::span<const double> errors);

/// Long form: t,x,exact,predicted,abs_error at 17 significant digits.
void export_error_csv(const MetricsReport& report, const std::filesystem::path& path);
/// Columns t,l2,linf, one row per time slice.
void export_norms_csv(const MetricsReport& report, const std::filesystem::path& path);

/// Spline-method error grids transcribed verbatim from the published
/// comparison tables; read-only fixtures.
struct BaselineTable {
    std::string method;
    std::vector<double> xs;
    std::vector<double> ts;
    Eigen::MatrixXd values; // xs rows, ts cols
};

const std::vector<BaselineTable>& nws_baselines();        ///< UCBS, TCBS, ECBS
const std::vector<BaselineTable>& allen_cahn_baselines(); ///< N-P, TCB-CM

/// Side-by-side comparison at the published grid coordinates: the stored
/// baseline methods plus a PINN column evaluated from the network.
struct ComparisonTable {
    std::string title;
    std::vector<double> xs;
    std::vector<double> ts;
    std::vector<BaselineTable> methods; // baselines first, PINN last
};

ComparisonTable paper_table(const Network& net, const ParabolicPde& pde, Problem problem);

std::string format_table(const ComparisonTable& table);
void export_table_csv(const ComparisonTable& table, const std::filesystem::path& path);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

/// Wall-clock seconds to evaluate the network at N seeded-random domain
/// points, for each N, with a least-squares line through (N, seconds).
struct TimingRecord {
    std::vector<long> point_counts;
    std::vector<double> seconds;
    LinearFit fit;
    int repeats = 1;
};

/// Times plain forward passes (no derivative lanes), single-threaded. Each
/// count is measured `repeats` times and the fastest pass is kept.
TimingRecord timing_benchmark(const Network& net, const ParabolicPde& pde,
                              std::span<const long> counts, std::uint64_t seed, int repeats = 5);

void export_timing_csv(const TimingRecord& record, const std::filesystem::path& path);

} // namespace pinn
