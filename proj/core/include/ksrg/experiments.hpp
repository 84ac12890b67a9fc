#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ksrg/components.hpp"
#include "ksrg/graph.hpp"
#include "ksrg/hubs.hpp"
#include "ksrg/params.hpp"
#include "ksrg/pointprocess.hpp"
#include "ksrg/stats.hpp"

namespace ksrg {

enum class ExperimentKind {
    Lln,
    LowerTail,
    UpperTail,
    SecondLargest,
    ClusterDecay,
    Boundary,
    EdgeBoundary,
    ThetaScan,
};

std::string_view to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment_kind(std::string_view text);

enum class GeneratorKind { CellGrid, Naive };

std::string_view to_string(GeneratorKind kind);
std::optional<GeneratorKind> parse_generator_kind(std::string_view text);

/// Called once per sampled graph with its component summary. Must be safe
/// to call concurrently.
using GraphInspector = std::function<void(const SpatialGraph&, const ComponentSummary&)>;

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Lln;
    ModelParams params;
    std::vector<double> n_grid;
    std::size_t replicates = 1;
    std::optional<double> rho;
    std::size_t ell_max = 64;
    double enlargement = 3.0;
    std::uint64_t seed = 0;
    int threads = 1;
    /// theta_scan only.
    std::vector<double> beta_grid;
    /// cluster_decay only: integer k range of the tail fit.
    std::size_t k_min = 8;
    std::size_t k_max = 256;
    GeneratorKind generator = GeneratorKind::CellGrid;
    double vertex_budget = kDefaultVertexBudget;
    /// Optional per-graph hook; when set, every graph is also passed
    /// through the full components() summary.
    GraphInspector inspect;
};

struct ResultRow {
    double n = 0.0;
    std::string statistic;
    double value = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::size_t replicates = 0;
};

struct FitReport {
    std::string label;  // e.g. "log(value) vs log(n)"
    ScalingFit fit;
    std::optional<double> predicted_slope;
};

struct ExperimentResult {
    ExperimentKind kind = ExperimentKind::Lln;
    std::vector<ResultRow> rows;
    /// Primary fit, absent when fewer than 3 bins survive.
    std::optional<FitReport> fit;
    /// cluster_decay: fits against the other candidate exponents.
    std::vector<FitReport> alternative_fits;
    /// cluster_decay: label of the candidate fit with the highest r2.
    std::optional<std::string> better_fit;
    ExponentReport exponents;
    std::vector<std::string> warnings;
    bool insufficient_events = false;
    std::optional<double> rho;
    std::optional<TailAnalysis> tail;
    /// Number of graphs on which the component identities were verified.
    std::size_t identity_checks = 0;
};

/// Minimum number of positive outcomes for a bin to enter a fit.
inline constexpr std::size_t kMinEventsPerBin = 5;

/// Runs the experiment. Fits that lose bins to the event threshold carry
/// warnings; with fewer than 3 surviving bins the fit is absent and
/// insufficient_events is set. Throws Error{Capacity} if a replicate would
/// exceed the vertex budget and Error{RejectDomain} for malformed grids.
ExperimentResult run_scaling_experiment(const ExperimentConfig& config);

/// Palm estimate of the origin cluster law in Lambda_n.
ClusterLawEstimate estimate_cluster_law(const ModelParams& params, double n, std::size_t replicates,
                                        std::size_t ell_max, std::uint64_t seed, int threads = 1,
                                        GeneratorKind generator = GeneratorKind::CellGrid);

}  // namespace ksrg
