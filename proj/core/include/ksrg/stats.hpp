#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace ksrg {

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

/// Ordinary least-squares line through (x, y) points.
struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    double stderr_slope = 0.0;
    std::vector<std::pair<double, double>> points;
};

/// Throws std::invalid_argument with fewer than 3 points or constant x.
ScalingFit fit_line(std::vector<std::pair<double, double>> points);

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::size_t successes, std::size_t trials, double confidence = 0.95);

struct SampleSummary {
    std::size_t count = 0;
    double mean = 0.0;
    double sd = 0.0;  // unbiased (n-1)
    Interval mean_ci;
    Interval sd_ci;
};

/// Mean and standard deviation with Student-t and chi-squared intervals.
SampleSummary summarize_sample(std::span<const double> values, double confidence = 0.95);

struct MedianEstimate {
    double median = 0.0;
    Interval ci;  // distribution-free, from binomial order statistics
};

MedianEstimate median_with_ci(std::vector<double> values, double confidence = 0.95);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::vector<double> a, std::vector<double> b);

/// Asymptotic two-sided p-value of the two-sample KS test.
double ks_two_sample_pvalue(std::span<const double> a, std::span<const double> b);

}  // namespace ksrg
