#include "pinn/commands.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "pinn/ad/derivative_check.hpp"
#include "pinn/checkpoint.hpp"
#include "pinn/csv.hpp"
#include "pinn/errors.hpp"
#include "pinn/rng.hpp"
#include "pinn/version.hpp"

namespace pinn {

namespace {

std::string sizes_to_string(const std::vector<std::size_t>& sizes) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < sizes.size(); ++i) os << (i ? "," : "") << sizes[i];
    os << ']';
    return os.str();
}

Network load_compatible_checkpoint(const std::filesystem::path& path, const RunConfig& config) {
    Network net = load_checkpoint(path);
    auto found = net.layer_sizes();
    auto expected = config.layer_sizes();
    if (found != expected)
        throw ConfigError("checkpoint layer sizes " + sizes_to_string(found) +
                          " do not match configured " + sizes_to_string(expected));
    if (net.activation != config.activation)
        throw ConfigError(std::string("checkpoint activation '") +
                          activation_name(net.activation) + "' does not match configured '" +
                          activation_name(config.activation) + "'");
    return net;
}

void write_manifest(const RunConfig& config, const std::filesystem::path& path,
                    double wall_seconds) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw IoError("cannot open " + path.string());
    os << "# pinn " << kVersion << " run manifest; reloads as a config file\n";
    os << "# command: train\n";
    os << "# wall_seconds: " << format_g17(wall_seconds) << '\n';
    dump_config(config, os);
    if (!os) throw IoError("write failed: " + path.string());
}

} // namespace

TrainOutputs cmd_train(const RunConfig& config, bool dump_samples) {
    config.validate();
    std::filesystem::create_directories(config.out_dir);

    ParabolicPde pde = config.make_pde();
    Network net = init_glorot(config.layer_sizes(), config.activation, config.seed);
    SampleSet samples = sample_uniform(pde, config.n0, config.nb, config.nc, config.seed);

    TrainOutputs out;
    out.result = train(pde, std::move(net), samples, config.training);

    const std::filesystem::path dir(config.out_dir);
    out.checkpoint = dir / kCheckpointFile;
    out.history = dir / kHistoryFile;
    out.manifest = dir / kManifestFile;
    save_checkpoint(out.result.net, out.checkpoint);
    write_history_csv(out.result.history, out.history);
    write_manifest(config, out.manifest, out.result.wall_seconds);
    if (dump_samples) dump_csv(samples, dir / kSamplesFile);
    return out;
}

EvaluateOutputs cmd_evaluate(const std::filesystem::path& checkpoint, const RunConfig& config) {
    config.validate();
    std::filesystem::create_directories(config.out_dir);
    Network net = load_compatible_checkpoint(checkpoint, config);
    ParabolicPde pde = config.make_pde();

    EvaluateOutputs out;
    EvalGrid error_grid = make_grid(config.grid_h, config.grid_dt, pde, config.grid_t_max);
    out.error_report = absolute_error_grid(net, pde, error_grid);
    EvalGrid norm_grid = make_grid(config.norm_h, config.norm_dt, pde);
    out.norm_report = absolute_error_grid(net, pde, norm_grid);

    const std::filesystem::path dir(config.out_dir);
    out.errors_csv = dir / kErrorsFile;
    out.norms_csv = dir / kNormsFile;
    export_error_csv(out.error_report, out.errors_csv);
    export_norms_csv(out.norm_report, out.norms_csv);

    std::ostringstream os;
    os << "max_abs_error = " << format_g17(out.error_report.max_abs_error) << " on "
       << out.error_report.grid.ts.size() << "x" << out.error_report.grid.xs.size()
       << " grid (h=" << format_g17(config.grid_h) << ", dt=" << format_g17(config.grid_dt)
       << ", t<=" << format_g17(config.grid_t_max) << ")";
    out.summary = os.str();
    return out;
}

ComparisonTable cmd_tables(const std::filesystem::path& checkpoint, const RunConfig& config) {
    config.validate();
    std::filesystem::create_directories(config.out_dir);
    Network net = load_compatible_checkpoint(checkpoint, config);
    ParabolicPde pde = config.make_pde();
    ComparisonTable table = paper_table(net, pde, config.problem);

    const std::filesystem::path dir(config.out_dir);
    std::ofstream os(dir / kTablesFile, std::ios::trunc);
    if (!os) throw IoError("cannot open tables.txt");
    os << format_table(table);
    export_table_csv(table, dir / "tables.csv");
    return table;
}

TimingRecord cmd_benchmark(const std::filesystem::path& checkpoint, const RunConfig& config,
                           int repeats) {
    config.validate();
    std::filesystem::create_directories(config.out_dir);
    Network net = load_compatible_checkpoint(checkpoint, config);
    ParabolicPde pde = config.make_pde();

    std::vector<long> counts;
    for (long n = 1000; n <= 10000; n += 1000) counts.push_back(n);
    TimingRecord record = timing_benchmark(net, pde, counts, config.seed, repeats);
    export_timing_csv(record, std::filesystem::path(config.out_dir) / kTimingFile);
    return record;
}

CheckReport cmd_check() {
    CheckReport report;
    auto record = [&report](bool ok, const std::string& line) {
        report.ok = report.ok && ok;
        report.lines.push_back(std::string(ok ? "PASS " : "FAIL ") + line);
    };
    char buf[160];

    // autodiff: every primitive and a composite, 100 seeded points each
    const double step = 1e-4;
    const double tol_first = 1e-5, tol_second = 1e-3;
    // generic bodies stamped out per scalar type
#define PINN_PROBE_BODY(expr)                                                    \
    [](auto pt) {                                                                \
        auto x = pt[0];                                                          \
        auto y = pt[1];                                                          \
        (void)y;                                                                 \
        using std::exp;                                                          \
        using std::tanh;                                                         \
        using std::erf;                                                          \
        return expr;                                                             \
    }
    auto run_probe = [&](const char* name, double lo, double hi, auto fn) {
        Rng rng(2024);
        double worst_first = 0.0, worst_second = 0.0;
        for (int k = 0; k < 100; ++k) {
            double pt[2] = {rng.uniform(lo, hi), rng.uniform(lo, hi)};
            auto rep = ad::derivative_check(fn, std::span<const double>(pt, 2), step);
            worst_first = std::max(worst_first, rep.max_rel_first);
            worst_second = std::max(worst_second, rep.max_rel_second);
        }
        bool ok = worst_first <= tol_first && worst_second <= tol_second;
        std::snprintf(buf, sizeof buf,
                      "autodiff %-9s max rel err %.2e (first, tol %.0e), %.2e (second, tol %.0e)",
                      name, worst_first, tol_first, worst_second, tol_second);
        record(ok, buf);
    };
    run_probe("add/sub", -2.0, 2.0, PINN_PROBE_BODY(x + y - (x - y)));
    run_probe("mul", -2.0, 2.0, PINN_PROBE_BODY(x * y * x));
    run_probe("div", 0.5, 2.0, PINN_PROBE_BODY(x / (y + 1.0)));
    run_probe("ipow", -2.0, 2.0, PINN_PROBE_BODY(ad::ipow(x, 3)));
    run_probe("exp", -1.5, 1.5, PINN_PROBE_BODY(exp(x)));
    run_probe("tanh", -2.0, 2.0, PINN_PROBE_BODY(tanh(x * y)));
    run_probe("erf", -2.0, 2.0, PINN_PROBE_BODY(erf(x)));
    run_probe("composite", -1.2, 1.2,
              PINN_PROBE_BODY(tanh(x) * erf(y) + exp(x * y) / (x * x + 1.0)));
#undef PINN_PROBE_BODY

    // closed-form residual probes
    {
        ParabolicPde nws = nws_problem({0.1});
        auto pts = random_domain_points(nws, 1000, 7);
        double worst = exact_residual_probe(nws, pts);
        std::snprintf(buf, sizeof buf, "nws exact residual max %.2e (tol 1e-10)", worst);
        record(worst <= 1e-10, buf);
    }
    {
        ParabolicPde ac = allen_cahn_problem();
        auto pts = random_domain_points(ac, 1000, 7);
        double worst = exact_residual_probe(ac, pts);
        std::snprintf(buf, sizeof buf, "allen-cahn exact residual max %.2e (tol 5e-5)", worst);
        record(worst <= 5e-5, buf);
    }
    return report;
}

} // namespace pinn
