#include "pinn/evaluation.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pinn/csv.hpp"
#include "pinn/errors.hpp"
#include "pinn/rng.hpp"

namespace pinn {

MetricsReport absolute_error_grid(const Network& net, const ParabolicPde& pde,
                                  const EvalGrid& grid) {
    if (!pde.exact) throw UsageError("absolute_error_grid: pde has no exact solution");

    const auto nt = static_cast<Eigen::Index>(grid.ts.size());
    const auto nx = static_cast<Eigen::Index>(grid.xs.size());
    MetricsReport report;
    report.grid = grid;
    report.exact.resize(nt, nx);
    report.predicted.resize(nt, nx);
    report.error_grid.resize(nt, nx);

    for (Eigen::Index i = 0; i < nt; ++i) {
        const double t = grid.ts[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < nx; ++j) {
            const double x = grid.xs[static_cast<std::size_t>(j)];
            report.exact(i, j) = pde.exact(x, t);
            report.predicted(i, j) = net.value(t, x);
            report.error_grid(i, j) = std::abs(report.exact(i, j) - report.predicted(i, j));
        }
    }

    report.max_abs_error = 0.0;
    report.l2_by_t.reserve(static_cast<std::size_t>(nt));
    report.linf_by_t.reserve(static_cast<std::size_t>(nt));
    for (Eigen::Index i = 0; i < nt; ++i) {
        const double t = grid.ts[static_cast<std::size_t>(i)];
        std::vector<double> slice(static_cast<std::size_t>(nx));
        for (Eigen::Index j = 0; j < nx; ++j) slice[static_cast<std::size_t>(j)] =
            report.error_grid(i, j);
        report.l2_by_t.emplace_back(t, l2_norm(slice));
        report.linf_by_t.emplace_back(t, linf_norm(slice));
        report.max_abs_error = std::max(report.max_abs_error, report.linf_by_t.back().second);
    }
    return report;
}

double l2_norm(std::span<const double> errors) {
    if (errors.empty()) throw UsageError("l2_norm: empty vector");
    double acc = 0.0;
    for (double e : errors) acc += e * e;
    return std::sqrt(acc);
}

double linf_norm(std::span<const double> errors) {
    if (errors.empty()) throw UsageError("linf_norm: empty vector");
    double worst = 0.0;
    for (double e : errors) worst = std::max(worst, std::abs(e));
    return worst;
}

void export_error_csv(const MetricsReport& report, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw IoError("cannot open " + path.string());
    os << "t,x,exact,predicted,abs_error\n";
    for (Eigen::Index i = 0; i < report.exact.rows(); ++i)
        for (Eigen::Index j = 0; j < report.exact.cols(); ++j)
            os << format_g17(report.grid.ts[static_cast<std::size_t>(i)]) << ','
               << format_g17(report.grid.xs[static_cast<std::size_t>(j)]) << ','
               << format_g17(report.exact(i, j)) << ',' << format_g17(report.predicted(i, j))
               << ',' << format_g17(report.error_grid(i, j)) << '\n';
    if (!os) throw IoError("write failed: " + path.string());
}

void export_norms_csv(const MetricsReport& report, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw IoError("cannot open " + path.string());
    os << "t,l2,linf\n";
    for (std::size_t i = 0; i < report.l2_by_t.size(); ++i)
        os << format_g17(report.l2_by_t[i].first) << ',' << format_g17(report.l2_by_t[i].second)
           << ',' << format_g17(report.linf_by_t[i].second) << '\n';
    if (!os) throw IoError("write failed: " + path.string());
}

ComparisonTable paper_table(const Network& net, const ParabolicPde& pde, Problem problem) {
    if (!pde.exact) throw UsageError("paper_table: pde has no exact solution");
    const auto& baselines =
        problem == Problem::nws ? nws_baselines() : allen_cahn_baselines();

    ComparisonTable table;
    table.title = problem == Problem::nws
                      ? "Absolute error, 0<=x<=1, 0<=t<=1, lambda=0.1"
                      : "Absolute error, 0<=t<=0.01, 0<=x<=1, dt=0.001, h=0.1";
    table.xs = baselines.front().xs;
    table.ts = baselines.front().ts;
    table.methods = baselines;

    BaselineTable mine;
    mine.method = "PINN";
    mine.xs = table.xs;
    mine.ts = table.ts;
    mine.values.resize(static_cast<Eigen::Index>(table.xs.size()),
                       static_cast<Eigen::Index>(table.ts.size()));
    for (std::size_t i = 0; i < table.xs.size(); ++i)
        for (std::size_t j = 0; j < table.ts.size(); ++j) {
            const double x = table.xs[i];
            const double t = table.ts[j];
            mine.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                std::abs(pde.exact(x, t) - net.value(t, x));
        }
    table.methods.push_back(std::move(mine));
    return table;
}

std::string format_table(const ComparisonTable& table) {
    std::ostringstream os;
    os << table.title << '\n';
    char buf[64];
    os << "x      method  ";
    for (double t : table.ts) {
        std::snprintf(buf, sizeof buf, "t=%-10.4g", t);
        os << buf;
    }
    os << '\n';
    for (std::size_t i = 0; i < table.xs.size(); ++i) {
        for (std::size_t m = 0; m < table.methods.size(); ++m) {
            if (m == 0)
                std::snprintf(buf, sizeof buf, "%-6.3g ", table.xs[i]);
            else
                std::snprintf(buf, sizeof buf, "       ");
            os << buf;
            std::snprintf(buf, sizeof buf, "%-7s ", table.methods[m].method.c_str());
            os << buf;
            for (std::size_t j = 0; j < table.ts.size(); ++j) {
                std::snprintf(buf, sizeof buf, "%-12.3e",
                              table.methods[m].values(static_cast<Eigen::Index>(i),
                                                      static_cast<Eigen::Index>(j)));
                os << buf;
            }
            os << '\n';
        }
    }
    return os.str();
}

void export_table_csv(const ComparisonTable& table, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw IoError("cannot open " + path.string());
    os << "method,x,t,abs_error\n";
    for (const auto& m : table.methods)
        for (std::size_t i = 0; i < table.xs.size(); ++i)
            for (std::size_t j = 0; j < table.ts.size(); ++j)
                os << m.method << ',' << format_g17(table.xs[i]) << ',' << format_g17(table.ts[j])
                   << ','
                   << format_g17(m.values(static_cast<Eigen::Index>(i),
                                          static_cast<Eigen::Index>(j)))
                   << '\n';
    if (!os) throw IoError("write failed: " + path.string());
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw UsageError("linear_fit: need >= 2 points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LinearFit fit;
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw UsageError("linear_fit: degenerate abscissae");
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double mean_y = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.slope * x[i] + fit.intercept);
        ss_res += r * r;
        ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
    }
    fit.r_squared = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

TimingRecord timing_benchmark(const Network& net, const ParabolicPde& pde,
                              std::span<const long> counts, std::uint64_t seed, int repeats) {
    if (counts.empty()) throw UsageError("timing_benchmark: empty count list");
    for (std::size_t i = 1; i < counts.size(); ++i)
        if (counts[i] <= counts[i - 1])
            throw UsageError("timing_benchmark: counts must be strictly increasing");
    if (repeats < 1) throw UsageError("timing_benchmark: repeats must be >= 1");

    TimingRecord record;
    record.repeats = repeats;
    double sink = 0.0;
    for (long n : counts) {
        auto points = random_domain_points(pde, static_cast<std::size_t>(n), seed + static_cast<std::uint64_t>(n));
        double best = std::numeric_limits<double>::infinity();
        for (int r = 0; r < repeats; ++r) {
            const auto t0 = std::chrono::steady_clock::now();
            for (const auto& [x, t] : points) sink += net.value(t, x);
            const auto t1 = std::chrono::steady_clock::now();
            best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
        }
        record.point_counts.push_back(n);
        record.seconds.push_back(best);
    }
    if (!std::isfinite(sink)) throw NumericError("timing_benchmark: non-finite network output");

    std::vector<double> xs(record.point_counts.begin(), record.point_counts.end());
    record.fit = linear_fit(xs, record.seconds);
    return record;
}

void export_timing_csv(const TimingRecord& record, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw IoError("cannot open " + path.string());
    os << "# fit slope=" << format_g17(record.fit.slope)
       << " intercept=" << format_g17(record.fit.intercept)
       << " r_squared=" << format_g17(record.fit.r_squared) << " repeats=" << record.repeats
       << '\n';
    os << "points,seconds\n";
    for (std::size_t i = 0; i < record.point_counts.size(); ++i)
        os << record.point_counts[i] << ',' << format_g17(record.seconds[i]) << '\n';
    if (!os) throw IoError("write failed: " + path.string());
}

} // namespace pinn
