#include "pinn/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "pinn/csv.hpp"
#include "pinn/errors.hpp"

namespace pinn {

Profile profile_from_name(const std::string& name) {
    if (name == "paper") return Profile::paper;
    if (name == "ci") return Profile::ci;
    throw ConfigError("unknown profile '" + name + "' (expected paper|ci)");
}

const char* profile_name(Profile p) {
    return p == Profile::paper ? "paper" : "ci";
}

std::vector<std::size_t> RunConfig::layer_sizes() const {
    std::vector<std::size_t> sizes;
    sizes.push_back(2);
    for (int i = 0; i < hidden_layers; ++i) sizes.push_back(static_cast<std::size_t>(width));
    sizes.push_back(1);
    return sizes;
}

ParabolicPde RunConfig::make_pde() const {
    if (problem == Problem::nws) return nws_problem({lambda});
    return allen_cahn_problem();
}

void RunConfig::validate() const {
    if (hidden_layers < 1) throw ConfigError("network.hidden_layers must be >= 1");
    if (width < 1) throw ConfigError("network.width must be >= 1");
    if (n0 < 1 || nb < 1 || nc < 1) throw ConfigError("sampling counts must be >= 1");
    if (nb % 2 != 0) throw ConfigError("sampling.nb must be even");
    if (grid_h <= 0.0 || grid_dt <= 0.0 || norm_h <= 0.0 || norm_dt <= 0.0)
        throw ConfigError("evaluation grid steps must be positive");
    if (grid_t_max <= 0.0) throw ConfigError("evaluation.grid_t_max must be positive");
    if (out_dir.empty()) throw ConfigError("output.dir must not be empty");
    training.validate();
    make_pde(); // problem-specific parameter checks (lambda)
}

RunConfig default_config(Problem problem, Profile profile) {
    RunConfig cfg;
    cfg.problem = problem;
    if (problem == Problem::allen_cahn) {
        cfg.width = 40;
        cfg.n0 = 500;
        cfg.nb = 500;
        cfg.grid_h = 0.1;
        cfg.grid_dt = 0.001;
        cfg.grid_t_max = 0.01;
        cfg.norm_h = 0.001;
        cfg.norm_dt = 0.1;
        cfg.seed = 42;
    }
    if (profile == Profile::ci) {
        cfg.width = 20;
        cfg.nc = 2000;
        cfg.training.iterations = 4000;
        cfg.training.schedule = {{0, 1e-2}, {400, 1e-3}, {1200, 5e-4}};
    }
    cfg.training.seed = cfg.seed;
    return cfg;
}

std::string format_schedule(const std::vector<ScheduleSegment>& schedule) {
    std::ostringstream os;
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (i) os << ',';
        os << schedule[i].start << ':' << format_g17(schedule[i].lr);
    }
    return os.str();
}

std::vector<ScheduleSegment> parse_schedule(const std::string& text) {
    std::vector<ScheduleSegment> schedule;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw ConfigError("schedule entry '" + item + "' is not start:rate");
        try {
            schedule.push_back(
                {std::stol(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
        } catch (const std::exception&) {
            throw ConfigError("schedule entry '" + item + "' is not start:rate");
        }
    }
    if (schedule.empty()) throw ConfigError("schedule must not be empty");
    return schedule;
}

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    auto end = s.find_last_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    return s.substr(begin, end - begin + 1);
}

struct IniData {
    // section.key -> value, in file order for error reporting
    std::map<std::string, std::string> values;
};

IniData parse_ini(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file " + path.string());
    IniData data;
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                                  ": malformed section header");
            section = trim(s.substr(1, s.size() - 2));
            continue;
        }
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                              ": expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (section.empty())
            throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                              ": key outside any [section]");
        data.values[section + "." + key] = value;
    }
    return data;
}

long to_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        long out = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("key " + key + ": expected integer, got '" + v + "'");
    }
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        unsigned long long out = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("key " + key + ": expected unsigned integer, got '" + v + "'");
    }
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double out = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("key " + key + ": expected number, got '" + v + "'");
    }
}

void apply_ini(RunConfig& cfg, const IniData& ini) {
    for (const auto& [key, value] : ini.values) {
        if (key == "problem.name") cfg.problem = problem_from_name(value);
        else if (key == "problem.lambda") cfg.lambda = to_double(key, value);
        else if (key == "network.hidden_layers") cfg.hidden_layers = static_cast<int>(to_long(key, value));
        else if (key == "network.width") cfg.width = static_cast<int>(to_long(key, value));
        else if (key == "network.activation") cfg.activation = activation_from_name(value);
        else if (key == "sampling.n0") cfg.n0 = static_cast<std::size_t>(to_u64(key, value));
        else if (key == "sampling.nb") cfg.nb = static_cast<std::size_t>(to_u64(key, value));
        else if (key == "sampling.nc") cfg.nc = static_cast<std::size_t>(to_u64(key, value));
        else if (key == "sampling.seed") cfg.seed = to_u64(key, value);
        else if (key == "training.iterations") cfg.training.iterations = to_long(key, value);
        else if (key == "training.schedule") cfg.training.schedule = parse_schedule(value);
        else if (key == "training.alpha") cfg.training.alpha = to_double(key, value);
        else if (key == "training.beta") cfg.training.beta = to_double(key, value);
        else if (key == "training.gamma") cfg.training.gamma = to_double(key, value);
        else if (key == "training.adam_beta1") cfg.training.adam.beta1 = to_double(key, value);
        else if (key == "training.adam_beta2") cfg.training.adam.beta2 = to_double(key, value);
        else if (key == "training.adam_epsilon") cfg.training.adam.epsilon = to_double(key, value);
        else if (key == "training.threads") cfg.training.threads = static_cast<int>(to_long(key, value));
        else if (key == "training.progress_interval") cfg.training.progress_interval = to_long(key, value);
        else if (key == "evaluation.grid_h") cfg.grid_h = to_double(key, value);
        else if (key == "evaluation.grid_dt") cfg.grid_dt = to_double(key, value);
        else if (key == "evaluation.grid_t_max") cfg.grid_t_max = to_double(key, value);
        else if (key == "evaluation.norm_h") cfg.norm_h = to_double(key, value);
        else if (key == "evaluation.norm_dt") cfg.norm_dt = to_double(key, value);
        else if (key == "output.dir") cfg.out_dir = value;
        else throw ConfigError("unknown key '" + key + "'");
    }
}

void apply_overrides(RunConfig& cfg, const ConfigOverrides& o) {
    if (o.seed) {
        cfg.seed = *o.seed;
        cfg.training.seed = *o.seed;
    }
    if (o.out_dir) cfg.out_dir = *o.out_dir;
    if (o.threads) cfg.training.threads = *o.threads;
}

} // namespace

RunConfig load_config(const std::filesystem::path& path, const ConfigOverrides& overrides) {
    IniData ini = parse_ini(path);

    Problem problem = Problem::nws;
    if (auto it = ini.values.find("problem.name"); it != ini.values.end())
        problem = problem_from_name(it->second);
    if (overrides.problem) problem = *overrides.problem;
    Profile profile = overrides.profile.value_or(Profile::paper);

    RunConfig cfg = default_config(problem, profile);
    apply_ini(cfg, ini);
    cfg.problem = problem; // a --problem flag wins over the file
    cfg.training.seed = cfg.seed;
    apply_overrides(cfg, overrides);
    cfg.validate();
    return cfg;
}

RunConfig build_config(const ConfigOverrides& overrides) {
    RunConfig cfg = default_config(overrides.problem.value_or(Problem::nws),
                                   overrides.profile.value_or(Profile::paper));
    apply_overrides(cfg, overrides);
    cfg.validate();
    return cfg;
}

void dump_config(const RunConfig& cfg, std::ostream& os) {
    os << "[problem]\n";
    os << "name = " << problem_name(cfg.problem) << '\n';
    os << "lambda = " << format_g17(cfg.lambda) << '\n';
    os << "\n[network]\n";
    os << "hidden_layers = " << cfg.hidden_layers << '\n';
    os << "width = " << cfg.width << '\n';
    os << "activation = " << activation_name(cfg.activation) << '\n';
    os << "\n[sampling]\n";
    os << "n0 = " << cfg.n0 << '\n';
    os << "nb = " << cfg.nb << '\n';
    os << "nc = " << cfg.nc << '\n';
    os << "seed = " << cfg.seed << '\n';
    os << "\n[training]\n";
    os << "iterations = " << cfg.training.iterations << '\n';
    os << "schedule = " << format_schedule(cfg.training.schedule) << '\n';
    os << "alpha = " << format_g17(cfg.training.alpha) << '\n';
    os << "beta = " << format_g17(cfg.training.beta) << '\n';
    os << "gamma = " << format_g17(cfg.training.gamma) << '\n';
    os << "adam_beta1 = " << format_g17(cfg.training.adam.beta1) << '\n';
    os << "adam_beta2 = " << format_g17(cfg.training.adam.beta2) << '\n';
    os << "adam_epsilon = " << format_g17(cfg.training.adam.epsilon) << '\n';
    os << "threads = " << cfg.training.threads << '\n';
    os << "progress_interval = " << cfg.training.progress_interval << '\n';
    os << "\n[evaluation]\n";
    os << "grid_h = " << format_g17(cfg.grid_h) << '\n';
    os << "grid_dt = " << format_g17(cfg.grid_dt) << '\n';
    os << "grid_t_max = " << format_g17(cfg.grid_t_max) << '\n';
    os << "norm_h = " << format_g17(cfg.norm_h) << '\n';
    os << "norm_dt = " << format_g17(cfg.norm_dt) << '\n';
    os << "\n[output]\n";
    os << "dir = " << cfg.out_dir << '\n';
}

} // namespace pinn
