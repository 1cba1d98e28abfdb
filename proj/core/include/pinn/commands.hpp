#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pinn/config.hpp"
#include "pinn/evaluation.hpp"
#include "pinn/training.hpp"

namespace pinn {

/// Output file names inside the run directory.
inline constexpr const char* kCheckpointFile = "checkpoint.bin";
inline constexpr const char* kManifestFile = "manifest.ini";
inline constexpr const char* kHistoryFile = "history.csv";
inline constexpr const char* kErrorsFile = "errors.csv";
inline constexpr const char* kNormsFile = "norms.csv";
inline constexpr const char* kTimingFile = "timing.csv";
inline constexpr const char* kTablesFile = "tables.txt";
inline constexpr const char* kSamplesFile = "samples.csv";

struct TrainOutputs {
    std::filesystem::path checkpoint;
    std::filesystem::path history;
    std::filesystem::path manifest;
    TrainResult result;
};

/// Full deterministic pipeline: problem + init + sampling + training, then
/// checkpoint, loss history and a manifest that reloads as a config.
TrainOutputs cmd_train(const RunConfig& config, bool dump_samples = false);

struct EvaluateOutputs {
    MetricsReport error_report; ///< on the configured error grid
    MetricsReport norm_report;  ///< on the norms grid (full horizon)
    std::filesystem::path errors_csv;
    std::filesystem::path norms_csv;
    std::string summary;
};

EvaluateOutputs cmd_evaluate(const std::filesystem::path& checkpoint, const RunConfig& config);

/// Side-by-side table against the stored spline baselines; also written to
/// tables.txt and tables.csv in the run directory.
ComparisonTable cmd_tables(const std::filesystem::path& checkpoint, const RunConfig& config);

TimingRecord cmd_benchmark(const std::filesystem::path& checkpoint, const RunConfig& config,
                           int repeats = 5);

struct CheckReport {
    bool ok = true;
    std::vector<std::string> lines;
};

/// Self-check: finite-difference probes of every autodiff route and the
/// closed-form residual probes of both problems.
CheckReport cmd_check();

} // namespace pinn
