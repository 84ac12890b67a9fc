#include "ksrg_cli/report.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "ksrg/error.hpp"
#include "ksrg/version.hpp"

namespace ksrg::cli {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ec == std::errc() ? ptr : buf);
}

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << format_double(r.n) << ',' << r.statistic << ',' << format_double(r.value) << ','
            << format_double(r.ci_low) << ',' << format_double(r.ci_high) << ',' << r.replicates << '\n';
    }
}

namespace {

double parse_field(const std::string& s, std::size_t line) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw Error(ErrorCode::Parse, "results.csv line " + std::to_string(line) + ": bad number '" + s + "'");
    }
    return v;
}

}  // namespace

std::vector<ResultRow> read_results_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw Error(ErrorCode::Parse, "results.csv: unexpected header");
    }
    std::vector<ResultRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 6) {
            throw Error(ErrorCode::Parse, "results.csv line " + std::to_string(line_no) + ": expected 6 fields");
        }
        ResultRow r;
        r.n = parse_field(fields[0], line_no);
        r.statistic = fields[1];
        r.value = parse_field(fields[2], line_no);
        r.ci_low = parse_field(fields[3], line_no);
        r.ci_high = parse_field(fields[4], line_no);
        r.replicates = static_cast<std::size_t>(parse_field(fields[5], line_no));
        rows.push_back(std::move(r));
    }
    return rows;
}

nlohmann::json to_json(const ExtReal& v) {
    if (v.is_finite()) return v.value();
    return v.to_string();
}

nlohmann::json to_json(const ExponentReport& r) {
    auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    nlohmann::json types = nlohmann::json::array();
    for (auto t : r.dominant_types) types.push_back(to_string(t));
    return {
        {"zeta_short", to_json(r.zeta_short)},
        {"zeta_ll", to_json(r.zeta_ll)},
        {"zeta_hl", to_json(r.zeta_hl)},
        {"zeta_hh", to_json(r.zeta_hh)},
        {"zeta_long", r.zeta_long},
        {"zeta_star", r.zeta_star},
        {"gamma_ll", opt(r.gamma_ll)},
        {"gamma_hl", opt(r.gamma_hl)},
        {"gamma_hh", opt(r.gamma_hh)},
        {"eta_ll", opt(r.eta_ll)},
        {"eta_hl", opt(r.eta_hl)},
        {"eta_hh", opt(r.eta_hh)},
        {"multiplicity", r.multiplicity},
        {"dominant_types", types},
        {"cluster_decay_alt_exponent", opt(r.cluster_decay_alt_exponent)},
    };
}

nlohmann::json to_json(const ScalingFit& fit) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& [x, y] : fit.points) points.push_back({x, y});
    return {{"slope", fit.slope},
            {"intercept", fit.intercept},
            {"r2", fit.r2},
            {"stderr_slope", fit.stderr_slope},
            {"points", points}};
}

nlohmann::json to_json(const FitReport& fit) {
    auto j = to_json(fit.fit);
    j["label"] = fit.label;
    j["predicted_slope"] = fit.predicted_slope ? nlohmann::json(*fit.predicted_slope) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json to_json(const TailAnalysis& t) {
    return {{"hubs", t.hubs_value},
            {"hubs_lower", t.hubs_lower ? nlohmann::json(*t.hubs_lower) : nlohmann::json(nullptr)},
            {"h_up", t.h_up},
            {"h_lo", t.h_lo},
            {"rate_I", to_json(t.rate_I)},
            {"z_star", t.z_star}};
}

nlohmann::json fit_json(const ExperimentResult& result) {
    nlohmann::json j;
    j["experiment"] = std::string(to_string(result.kind));
    j["fit"] = result.fit ? to_json(*result.fit) : nlohmann::json(nullptr);
    j["insufficient_events"] = result.insufficient_events;
    nlohmann::json alts = nlohmann::json::array();
    for (const auto& f : result.alternative_fits) alts.push_back(to_json(f));
    j["alternative_fits"] = alts;
    j["better_fit"] = result.better_fit ? nlohmann::json(*result.better_fit) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json meta_json(const RunConfig& config, const ExponentReport& exponents,
                         const std::vector<std::string>& warnings, const ExperimentResult* result) {
    nlohmann::json echo = nlohmann::json::object();
    for (const auto& [k, v] : config.entries) echo[k] = v;
    const auto& m = config.model;
    nlohmann::json resolved = {
        {"d", m.d},
        {"tau", to_json(m.tau)},
        {"alpha", to_json(m.alpha)},
        {"kernel", m.kernel.kind == KernelKind::Sum ? "sum" : "interpolation"},
        {"sigma", m.kernel.sigma},
        {"beta", m.beta},
        {"p", m.p},
        {"profile", m.profile == ProfileKind::Threshold ? "threshold" : "polynomial"},
        {"vertices", m.vertex_process == VertexProcess::Lattice ? "lattice" : "ppp"},
        {"experiment", std::string(to_string(config.experiment))},
        {"n_grid", config.n_grid},
        {"replicates", config.replicates},
        {"rho", config.rho ? nlohmann::json(*config.rho) : nlohmann::json(nullptr)},
        {"ell_max", config.ell_max},
        {"enlargement", config.enlargement},
        {"seed", config.seed},
        {"threads", config.threads},
        {"out", config.out.string()},
        {"beta_grid", config.beta_grid},
        {"k_min", config.k_min},
        {"k_max", config.k_max},
        {"generator", std::string(to_string(config.generator))},
    };
    nlohmann::json j;
    j["config"] = echo;
    j["resolved"] = resolved;
    j["versions"] = {{"ksrg", kVersion},
                     {"compiler", __VERSION__},
                     {"cxx_standard", static_cast<long>(__cplusplus)}};
    j["exponents"] = to_json(exponents);
    j["warnings"] = warnings;
    if (result != nullptr) {
        j["identity_checks"] = result->identity_checks;
        j["rho_used"] = result->rho ? nlohmann::json(*result->rho) : nlohmann::json(nullptr);
        j["tail_analysis"] = result->tail ? to_json(*result->tail) : nlohmann::json(nullptr);
        j["insufficient_events"] = result->insufficient_events;
    }
    return j;
}

}  // namespace ksrg::cli
