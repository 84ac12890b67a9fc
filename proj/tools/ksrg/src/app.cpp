#include "ksrg_cli/app.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "ksrg/graphgen.hpp"
#include "ksrg/pointprocess.hpp"
#include "ksrg/seed.hpp"
#include "ksrg_cli/plot.hpp"
#include "ksrg_cli/report.hpp"

namespace ksrg::cli {

namespace {

constexpr const char* kUsage =
    "usage: ksrg phase|sample|experiment|plot [--config FILE] [--key value]...\n"
    "\n"
    "  phase       print the exponent report as JSON\n"
    "  sample      write one sampled graph to OUT/graph.txt\n"
    "  experiment  run a Monte Carlo experiment; writes results.csv, fit.json, meta.json\n"
    "  plot        draw OUT/results.csv as OUT/plot.svg\n"
    "\n"
    "Any config key may be given as --key value and overrides the file.\n"
    "KSRG_THREADS overrides the thread count.\n";

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out << content;
    if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
}

int run_sample(const RunConfig& config, std::ostream& out) {
    double n = 0.0;
    if (config.n) {
        n = *config.n;
    } else if (!config.n_grid.empty()) {
        n = config.n_grid.front();
    } else {
        throw Error(ErrorCode::Parse, "sample needs n or n_grid");
    }
    const BoxSpec box{n, config.model.d, config.enlargement_set ? config.enlargement : 1.0};
    VertexSet vertices = sample_vertices(box, config.model, derive_seed(config.seed, 0));
    const std::uint64_t edge_seed = derive_seed(config.seed, 2);
    SpatialGraph graph = config.generator == GeneratorKind::Naive
                             ? generate_naive(std::move(vertices), config.model, edge_seed, box)
                             : generate_cellgrid(std::move(vertices), config.model, edge_seed, box);
    ensure_dir(config.out);
    std::ostringstream text;
    write_edge_list(text, graph);
    write_file(config.out / "graph.txt", text.str());
    write_file(config.out / "meta.json", meta_json(config, compute_exponents(config.model), {}).dump(2) + "\n");
    out << "wrote " << (config.out / "graph.txt").string() << ": " << graph.num_vertices() << " vertices, "
        << graph.edges.size() << " edges\n";
    return 0;
}

int run_experiment(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const ExperimentResult result = run_scaling_experiment(to_experiment_config(config));
    ensure_dir(config.out);
    std::ostringstream csv;
    write_results_csv(csv, result.rows);
    write_file(config.out / "results.csv", csv.str());
    write_file(config.out / "fit.json", fit_json(result).dump(2) + "\n");
    write_file(config.out / "meta.json",
               meta_json(config, result.exponents, result.warnings, &result).dump(2) + "\n");
    for (const auto& w : result.warnings) err << "warning: " << w << '\n';
    out << "wrote " << result.rows.size() << " rows to " << (config.out / "results.csv").string() << '\n';
    if (result.fit) {
        out << "fit " << result.fit->label << ": slope " << format_double(result.fit->fit.slope) << " +- "
            << format_double(result.fit->fit.stderr_slope) << ", r2 " << format_double(result.fit->fit.r2);
        if (result.fit->predicted_slope) out << ", predicted " << format_double(*result.fit->predicted_slope);
        out << '\n';
    }
    if (result.insufficient_events) {
        err << "INSUFFICIENT_EVENTS: fewer than 3 bins with enough events\n";
        return exit_code(ErrorCode::InsufficientEvents);
    }
    return 0;
}

int run_plot(const RunConfig& config, std::ostream& out) {
    std::istringstream csv(read_file(config.out / "results.csv"));
    const auto rows = read_results_csv(csv);
    const PlotResult plot = render_plot(rows, config.statistic, compute_exponents(config.model));
    write_file(config.out / "plot.svg", plot.svg);
    out << "wrote " << (config.out / "plot.svg").string() << " (" << plot.statistic;
    if (plot.fit) out << ", slope " << format_double(plot.fit->slope);
    out << ")\n";
    return 0;
}

}  // namespace

Invocation parse_arguments(const std::vector<std::string>& args) {
    Invocation inv;
    if (args.empty()) throw Error(ErrorCode::Parse, "missing subcommand");
    if (args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
        inv.help = true;
        return inv;
    }
    const auto sub = parse_subcommand(args[0]);
    if (!sub) throw Error(ErrorCode::Parse, "unknown subcommand '" + args[0] + "'");
    inv.subcommand = *sub;
    for (std::size_t i = 1; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--help" || a == "-h") {
            inv.help = true;
            continue;
        }
        if (a.rfind("--", 0) != 0 || a.size() < 3) throw Error(ErrorCode::Parse, "unexpected argument '" + a + "'");
        std::string key = a.substr(2);
        std::string value;
        if (const auto eq = key.find('='); eq != std::string::npos) {
            value = key.substr(eq + 1);
            key = key.substr(0, eq);
        } else {
            if (i + 1 >= args.size()) throw Error(ErrorCode::Parse, "missing value for --" + key);
            value = args[++i];
        }
        if (key == "config") {
            inv.config_path = value;
        } else {
            inv.overrides.emplace_back(key, value);
        }
    }
    return inv;
}

int exit_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::Capacity: return 2;
        case ErrorCode::InsufficientEvents: return 3;
        default: return 1;
    }
}

int run(Subcommand subcommand, const RunConfig& config, std::ostream& out, std::ostream& err) {
    switch (subcommand) {
        case Subcommand::Phase:
            out << to_json(compute_exponents(config.model)).dump(2) << '\n';
            return 0;
        case Subcommand::Sample: return run_sample(config, out);
        case Subcommand::Experiment: return run_experiment(config, out, err);
        case Subcommand::Plot: return run_plot(config, out);
    }
    return 1;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        const Invocation inv = parse_arguments(args);
        if (inv.help) {
            out << kUsage;
            return 0;
        }
        const std::string text = inv.config_path ? read_file(*inv.config_path) : std::string();
        RunConfig config = parse_config(text, inv.overrides);
        apply_environment(config);
        return run(inv.subcommand, config, out, err);
    } catch (const Error& e) {
        err << "ksrg: " << e.what() << '\n';
        if (e.code() == ErrorCode::Parse && args.empty()) err << kUsage;
        return exit_code(e.code());
    } catch (const std::exception& e) {
        err << "ksrg: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace ksrg::cli
