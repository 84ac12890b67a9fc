#include "ksrg_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>

#include "ksrg/error.hpp"
#include "ksrg/parallel.hpp"

namespace ksrg::cli {

std::optional<Subcommand> parse_subcommand(std::string_view text) {
    if (text == "phase") return Subcommand::Phase;
    if (text == "sample") return Subcommand::Sample;
    if (text == "experiment") return Subcommand::Experiment;
    if (text == "plot") return Subcommand::Plot;
    return std::nullopt;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

/// Thrown by value parsers; rewrapped with the line reference.
struct BadValue {
    std::string message;
};

double parse_real(std::string_view text) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw BadValue{"expected a finite number, got '" + std::string(text) + "'"};
    }
    return v;
}

ExtReal parse_ext(std::string_view text) {
    if (text == "inf" || text == "+inf" || text == "infinity") return ExtReal::pos_inf();
    return parse_real(text);
}

std::uint64_t parse_unsigned(std::string_view text) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw BadValue{"expected a non-negative integer, got '" + std::string(text) + "'"};
    }
    return v;
}

/// Integer-valued count; accepts "1e5" style input when it is integral.
std::size_t parse_count(std::string_view text) {
    try {
        return parse_unsigned(text);
    } catch (const BadValue&) {
        const double v = parse_real(text);
        if (v < 0.0 || v != std::floor(v) || v > 9.0e15) {
            throw BadValue{"expected a non-negative integer, got '" + std::string(text) + "'"};
        }
        return static_cast<std::size_t>(v);
    }
}

std::vector<double> parse_list(std::string_view text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto item = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (item.empty()) throw BadValue{"empty entry in list '" + std::string(text) + "'"};
        out.push_back(parse_real(item));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

/// Model value in isolation: validated against otherwise default parameters.
void check_alone(const ModelParams& probe_in) {
    ModelParams probe = probe_in;
    probe.profile = probe.alpha.is_pos_inf() ? ProfileKind::Threshold : ProfileKind::Polynomial;
    validate(probe);
}

struct Parser {
    RunConfig config;
    bool profile_set = false;
    bool alpha_set = false;
    std::map<std::string, std::string> where;

    using Setter = std::function<void(std::string_view)>;
    std::map<std::string, Setter, std::less<>> setters;

    Parser() {
        config.threads = available_threads();
        auto model_key = [this](auto apply) {
            return [this, apply](std::string_view v) {
                ModelParams probe;
                apply(probe, v);
                check_alone(probe);
                apply(config.model, v);
            };
        };
        setters["d"] = model_key([](ModelParams& m, std::string_view v) {
            const auto d = parse_count(v);
            if (d > 64) throw BadValue{"dimension too large"};
            m.d = static_cast<int>(d);
        });
        setters["tau"] = model_key([](ModelParams& m, std::string_view v) { m.tau = parse_ext(v); });
        setters["alpha"] = [this, inner = model_key([](ModelParams& m, std::string_view v) { m.alpha = parse_ext(v); })](
                               std::string_view v) {
            inner(v);
            alpha_set = true;
        };
        setters["sigma"] = model_key([](ModelParams& m, std::string_view v) { m.kernel.sigma = parse_real(v); });
        setters["kernel"] = [this](std::string_view v) {
            if (v == "interpolation") {
                config.model.kernel.kind = KernelKind::Interpolation;
            } else if (v == "sum") {
                config.model.kernel.kind = KernelKind::Sum;
            } else {
                throw BadValue{"kernel must be 'interpolation' or 'sum'"};
            }
        };
        setters["beta"] = model_key([](ModelParams& m, std::string_view v) { m.beta = parse_real(v); });
        setters["p"] = model_key([](ModelParams& m, std::string_view v) { m.p = parse_real(v); });
        setters["profile"] = [this](std::string_view v) {
            if (v == "threshold") {
                config.model.profile = ProfileKind::Threshold;
            } else if (v == "polynomial") {
                config.model.profile = ProfileKind::Polynomial;
            } else {
                throw BadValue{"profile must be 'threshold' or 'polynomial'"};
            }
            profile_set = true;
        };
        setters["vertices"] = [this](std::string_view v) {
            if (v == "ppp") {
                config.model.vertex_process = VertexProcess::Ppp;
            } else if (v == "lattice") {
                config.model.vertex_process = VertexProcess::Lattice;
            } else {
                throw BadValue{"vertices must be 'ppp' or 'lattice'"};
            }
        };
        setters["experiment"] = [this](std::string_view v) {
            const auto kind = parse_experiment_kind(v);
            if (!kind) throw BadValue{"unknown experiment '" + std::string(v) + "'"};
            config.experiment = *kind;
        };
        setters["n_grid"] = [this](std::string_view v) {
            auto grid = parse_list(v);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                if (!(grid[i] > 0.0)) throw BadValue{"n_grid values must be positive"};
                if (i > 0 && !(grid[i] > grid[i - 1])) throw BadValue{"n_grid must be strictly increasing"};
            }
            config.n_grid = std::move(grid);
        };
        setters["replicates"] = [this](std::string_view v) {
            const auto r = parse_count(v);
            if (r < 1) throw BadValue{"replicates must be >= 1"};
            config.replicates = r;
        };
        setters["rho"] = [this](std::string_view v) {
            const double r = parse_real(v);
            if (!(r > 0.0 && r < 1.0)) throw BadValue{"rho must lie in (0, 1)"};
            config.rho = r;
        };
        setters["ell_max"] = [this](std::string_view v) {
            const auto l = parse_count(v);
            if (l < 1) throw BadValue{"ell_max must be >= 1"};
            config.ell_max = l;
        };
        setters["enlargement"] = [this](std::string_view v) {
            const double e = parse_real(v);
            if (!(e >= 1.0)) throw BadValue{"enlargement must be >= 1"};
            config.enlargement = e;
            config.enlargement_set = true;
        };
        setters["seed"] = [this](std::string_view v) { config.seed = parse_unsigned(v); };
        setters["threads"] = [this](std::string_view v) {
            const auto t = parse_count(v);
            if (t < 1 || t > 4096) throw BadValue{"threads must be in [1, 4096]"};
            config.threads = static_cast<int>(t);
        };
        setters["out"] = [this](std::string_view v) { config.out = std::string(v); };
        setters["beta_grid"] = [this](std::string_view v) {
            auto grid = parse_list(v);
            for (double b : grid) {
                if (!(b > 0.0)) throw BadValue{"beta_grid values must be positive"};
            }
            config.beta_grid = std::move(grid);
        };
        setters["k_min"] = [this](std::string_view v) { config.k_min = parse_count(v); };
        setters["k_max"] = [this](std::string_view v) { config.k_max = parse_count(v); };
        setters["generator"] = [this](std::string_view v) {
            const auto g = parse_generator_kind(v);
            if (!g) throw BadValue{"generator must be 'cellgrid' or 'naive'"};
            config.generator = *g;
        };
        setters["n"] = [this](std::string_view v) {
            const double n = parse_real(v);
            if (!(n > 0.0)) throw BadValue{"n must be positive"};
            config.n = n;
        };
        setters["statistic"] = [this](std::string_view v) { config.statistic = std::string(v); };
    }

    void set(const std::string& key, std::string_view value, const std::string& ref) {
        const auto it = setters.find(key);
        if (it == setters.end()) throw Error(ErrorCode::Parse, ref + ": unknown key '" + key + "'");
        try {
            it->second(value);
        } catch (const BadValue& bad) {
            throw Error(ErrorCode::Parse, ref + ": " + key + ": " + bad.message);
        } catch (const Error& e) {
            const std::string what = e.what();
            const auto colon = what.find(": ");
            throw Error(e.code(), ref + ": " + (colon == std::string::npos ? what : what.substr(colon + 2)));
        }
        where[key] = ref;
        const auto entry = std::find_if(config.entries.begin(), config.entries.end(),
                                        [&](const auto& kv) { return kv.first == key; });
        if (entry == config.entries.end()) {
            config.entries.emplace_back(key, std::string(value));
        } else {
            entry->second = std::string(value);
        }
    }

    void finish() {
        auto& m = config.model;
        if (!profile_set) m.profile = m.alpha.is_pos_inf() ? ProfileKind::Threshold : ProfileKind::Polynomial;
        if (profile_set && !alpha_set && m.profile == ProfileKind::Threshold) m.alpha = ExtReal::pos_inf();
        try {
            validate(m);
        } catch (const Error& e) {
            std::string ref = "config";
            if (where.count("profile")) {
                ref = where["profile"];
            } else if (where.count("alpha")) {
                ref = where["alpha"];
            }
            const std::string what = e.what();
            const auto colon = what.find(": ");
            throw Error(e.code(), ref + ": " + (colon == std::string::npos ? what : what.substr(colon + 2)));
        }
    }
};

}  // namespace

RunConfig parse_config(std::string_view text, const Overrides& overrides) {
    Parser parser;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        const auto nl = text.find('\n', start);
        std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        start = nl == std::string_view::npos ? text.size() : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string ref = "line " + std::to_string(line_no);
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw Error(ErrorCode::Parse, ref + ": expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) throw Error(ErrorCode::Parse, ref + ": expected 'key = value'");
        parser.set(std::string(key), value, ref);
    }
    for (const auto& [key, value] : overrides) parser.set(key, trim(value), "--" + key);
    parser.finish();
    return parser.config;
}

void apply_environment(RunConfig& config) {
    const char* env = std::getenv("KSRG_THREADS");
    if (env == nullptr) return;
    const std::string_view text(env);
    int t = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), t);
    if (ec != std::errc() || ptr != text.data() + text.size() || t < 1) {
        throw Error(ErrorCode::Parse, "KSRG_THREADS must be a positive integer");
    }
    config.threads = t;
}

ExperimentConfig to_experiment_config(const RunConfig& config) {
    ExperimentConfig e;
    e.kind = config.experiment;
    e.params = config.model;
    e.n_grid = config.n_grid;
    e.replicates = config.replicates;
    e.rho = config.rho;
    e.ell_max = config.ell_max;
    e.enlargement = config.enlargement;
    e.seed = config.seed;
    e.threads = config.threads;
    e.beta_grid = config.beta_grid;
    e.k_min = config.k_min;
    e.k_max = config.k_max;
    e.generator = config.generator;
    return e;
}

}  // namespace ksrg::cli
