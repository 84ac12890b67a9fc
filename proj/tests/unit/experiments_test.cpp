#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <limits>

#include "ksrg/error.hpp"
#include "ksrg/experiments.hpp"

namespace ksrg {
namespace {

ModelParams lrp(int d, double beta, double alpha = 1.5) {
    ModelParams m;
    m.d = d;
    m.tau = ExtReal::pos_inf();
    m.alpha = alpha;
    m.beta = beta;
    return m;
}

ModelParams complete_graph() {
    ModelParams m = lrp(1, 1e9);
    m.alpha = ExtReal::pos_inf();
    m.profile = ProfileKind::Threshold;
    return m;
}

TEST(Experiments, KindNamesRoundTrip) {
    for (auto k : {ExperimentKind::Lln, ExperimentKind::LowerTail, ExperimentKind::UpperTail,
                   ExperimentKind::SecondLargest, ExperimentKind::ClusterDecay, ExperimentKind::Boundary,
                   ExperimentKind::EdgeBoundary, ExperimentKind::ThetaScan}) {
        EXPECT_EQ(parse_experiment_kind(to_string(k)), k);
    }
    EXPECT_FALSE(parse_experiment_kind("bogus").has_value());
    EXPECT_EQ(parse_generator_kind("naive"), GeneratorKind::Naive);
}

TEST(Experiments, CompleteGraphLlnHasMeanOne) {
    ExperimentConfig c;
    c.kind = ExperimentKind::Lln;
    c.params = complete_graph();
    c.n_grid = {50, 100, 200};
    c.replicates = 40;
    const ExperimentResult r = run_scaling_experiment(c);
    ASSERT_EQ(r.rows.size(), 6u);
    for (const ResultRow& row : r.rows) {
        if (row.statistic != "giant_fraction_mean") continue;
        EXPECT_NEAR(row.value, 1.0, 5.0 / std::sqrt(row.n * c.replicates));
    }
}

TEST(ClusterLawEstimate, EdgelessLimit) {
    const ClusterLawEstimate law = estimate_cluster_law(lrp(1, 1e-9), 200, 200, 64, 1);
    EXPECT_NO_THROW(check_cluster_law(law));
    EXPECT_EQ(law.theta_hat, 0.0);
    EXPECT_EQ(law.pmf.at(1), 1.0);
    EXPECT_EQ(law.replicates, 200u);
}

TEST(ClusterLawEstimate, CompleteGraphLimit) {
    const ClusterLawEstimate law = estimate_cluster_law(complete_graph(), 200, 200, 64, 1);
    EXPECT_EQ(law.theta_hat, 1.0);
}

TEST(ClusterLawEstimate, CensusMatchesPalmFrequencies) {
    // The census also counts clusters cut by the box boundary; that bias is
    // below 3 sigma from n = 32000 on.
    const std::size_t reps = 2000;
    const ClusterLawEstimate law = estimate_cluster_law(lrp(2, 0.24), 32000, reps, 64, 11);
    check_cluster_law(law);
    for (std::size_t ell : {1u, 2u, 3u}) {
        const double q = law.pmf.at(ell);
        const double sigma = std::sqrt(std::max(q * (1.0 - q), 1e-4) / static_cast<double>(reps));
        EXPECT_NEAR(law.census_pmf.at(ell), q, 3.0 * sigma) << "ell=" << ell;
    }
}

TEST(Experiments, RejectsMalformedGrids) {
    ExperimentConfig c;
    c.params = lrp(1, 0.5);
    c.replicates = 2;
    for (std::vector<double> grid : {std::vector<double>{100, 200}, std::vector<double>{100, 300, 200},
                                     std::vector<double>{-1, 100, 200}}) {
        c.n_grid = grid;
        try {
            run_scaling_experiment(c);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::RejectDomain);
        }
    }
}

TEST(Experiments, FlagsInsufficientEvents) {
    ExperimentConfig c;
    c.kind = ExperimentKind::UpperTail;
    c.params = lrp(1, 0.5);
    c.n_grid = {100, 200, 400};
    c.replicates = 4;
    c.rho = 0.999;
    const ExperimentResult r = run_scaling_experiment(c);
    EXPECT_TRUE(r.insufficient_events);
    EXPECT_FALSE(r.fit.has_value());
    EXPECT_FALSE(r.warnings.empty());
    EXPECT_EQ(r.rows.size(), 3u);
}

TEST(Experiments, IdenticalAcrossThreadCounts) {
    ExperimentConfig c;
    c.kind = ExperimentKind::SecondLargest;
    c.params.d = 2;
    c.params.tau = 2.5;
    c.params.alpha = 2.0;
    c.params.kernel.sigma = 1.0;
    c.params.beta = 0.5;
    c.n_grid = {500, 1000, 2000};
    c.replicates = 12;
    c.seed = 99;
    c.threads = 1;
    const ExperimentResult one = run_scaling_experiment(c);
    for (int t : {2, 4}) {
        c.threads = t;
        const ExperimentResult many = run_scaling_experiment(c);
        ASSERT_EQ(many.rows.size(), one.rows.size());
        for (std::size_t i = 0; i < one.rows.size(); ++i) {
            EXPECT_EQ(many.rows[i].value, one.rows[i].value);
            EXPECT_EQ(many.rows[i].ci_low, one.rows[i].ci_low);
            EXPECT_EQ(many.rows[i].ci_high, one.rows[i].ci_high);
        }
    }
}

TEST(Experiments, InspectorSeesEveryGraph) {
    ExperimentConfig c;
    c.kind = ExperimentKind::Boundary;
    c.params = lrp(1, 0.5);
    c.params.vertex_process = VertexProcess::Lattice;
    c.n_grid = {64, 128, 256};
    c.replicates = 5;
    c.threads = 2;
    std::atomic<int> seen{0};
    c.inspect = [&](const SpatialGraph& g, const ComponentSummary& s) {
        EXPECT_EQ(s.num_vertices, g.num_vertices());
        ++seen;
    };
    const ExperimentResult r = run_scaling_experiment(c);
    EXPECT_EQ(seen.load(), 15);
    EXPECT_EQ(r.identity_checks, 15u);
    ASSERT_TRUE(r.fit.has_value());
    EXPECT_EQ(r.fit->predicted_slope, 0.5);
}

TEST(Experiments, ThetaScanIncreasesWithBeta) {
    ExperimentConfig c;
    c.kind = ExperimentKind::ThetaScan;
    c.params = lrp(1, 0.5);
    c.n_grid = {400};
    c.beta_grid = {1e-6, 1e6};
    c.replicates = 30;
    const ExperimentResult r = run_scaling_experiment(c);
    double low = -1, high = -1;
    for (const ResultRow& row : r.rows) {
        if (row.statistic != "theta_hat") continue;
        (row.n < 1.0 ? low : high) = row.value;
    }
    EXPECT_EQ(low, 0.0);
    EXPECT_EQ(high, 1.0);
}

TEST(Experiments, CapacityErrorOnHugeVolume) {
    ExperimentConfig c;
    c.params = lrp(1, 0.5);
    c.n_grid = {1e3, 1e4, 1e12};
    c.replicates = 1;
    try {
        run_scaling_experiment(c);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Capacity);
    }
}

}  // namespace
}  // namespace ksrg
