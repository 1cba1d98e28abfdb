#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "pinn/activation.hpp"
#include "pinn/pde.hpp"
#include "pinn/training.hpp"

namespace pinn {

enum class Profile { paper, ci };

Profile profile_from_name(const std::string& name);
const char* profile_name(Profile p);

/// Everything one run needs. Defaults reproduce the published setups:
/// nws    8x20 gelu, N0=250,  Nb=250,  Nc=10000, Adam, 20000 iterations,
///        schedule 0->1e-2, 1000->1e-3, 3000->5e-4
/// allen-cahn  8x40, N0=500, Nb=500, Nc=10000, same training protocol
/// The ci profile shrinks this for automated testing: Nc=2000, 4000
/// iterations, width 20, schedule 0->1e-2, 400->1e-3, 1200->5e-4.
struct RunConfig {
    Problem problem = Problem::nws;
    double lambda = 0.1;

    int hidden_layers = 8;
    int width = 20;
    Activation activation = Activation::gelu;

    std::size_t n0 = 250;
    std::size_t nb = 250;
    std::size_t nc = 10000;
    std::uint64_t seed = 42;

    TrainConfig training;

    double grid_h = 0.004;
    double grid_dt = 0.004;
    double grid_t_max = 1.0;
    double norm_h = 0.004;
    double norm_dt = 0.2;

    std::string out_dir = "out";

    std::vector<std::size_t> layer_sizes() const;
    ParabolicPde make_pde() const;
    void validate() const;
};

RunConfig default_config(Problem problem, Profile profile = Profile::paper);

/// Optional command-line overrides applied on top of file values.
struct ConfigOverrides {
    std::optional<Problem> problem;
    std::optional<Profile> profile;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<int> threads;
};

/// Loads the documented INI-style key=value format (see docs/formats.md).
/// Omitted keys keep the per-problem defaults; unknown sections or keys are
/// rejected with the offending name.
RunConfig load_config(const std::filesystem::path& path, const ConfigOverrides& overrides = {});

/// Defaults + overrides without a file.
RunConfig build_config(const ConfigOverrides& overrides);

/// Effective configuration in the same INI format load_config reads; a
/// dumped config reloads to an identical RunConfig.
void dump_config(const RunConfig& config, std::ostream& os);

std::string format_schedule(const std::vector<ScheduleSegment>& schedule);
std::vector<ScheduleSegment> parse_schedule(const std::string& text);

} // namespace pinn
