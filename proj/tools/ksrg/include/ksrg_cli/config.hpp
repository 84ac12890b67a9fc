#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ksrg/experiments.hpp"
#include "ksrg/params.hpp"

namespace ksrg::cli {

enum class Subcommand { Phase, Sample, Experiment, Plot };

std::optional<Subcommand> parse_subcommand(std::string_view text);

struct RunConfig {
    ModelParams model;
    ExperimentKind experiment = ExperimentKind::Lln;
    std::vector<double> n_grid;
    std::size_t replicates = 1;
    std::optional<double> rho;
    std::size_t ell_max = 64;
    double enlargement = 3.0;
    bool enlargement_set = false;
    std::uint64_t seed = 0;
    int threads = 1;
    std::filesystem::path out = "ksrg_out";
    std::vector<double> beta_grid;
    std::size_t k_min = 8;
    std::size_t k_max = 256;
    GeneratorKind generator = GeneratorKind::CellGrid;
    /// Volume for `sample`; falls back to the first n_grid value.
    std::optional<double> n;
    /// Statistic drawn by `plot`; defaults to the first one in the CSV.
    std::optional<std::string> statistic;
    /// Every key that was set, in first-seen order, with its final text.
    std::vector<std::pair<std::string, std::string>> entries;
};

using Overrides = std::vector<std::pair<std::string, std::string>>;

/// Parses "key = value" lines ('#' starts a comment), then applies
/// overrides. Errors carry the offending line ("line 3: ...") or override
/// ("--alpha: ..."): Error{Parse} for syntax, unknown keys and malformed
/// values; validation codes for out-of-domain model values.
RunConfig parse_config(std::string_view text, const Overrides& overrides = {});

/// Applies KSRG_THREADS when set to a positive integer.
void apply_environment(RunConfig& config);

ExperimentConfig to_experiment_config(const RunConfig& config);

}  // namespace ksrg::cli
