#include "ksrg/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace ksrg {

namespace {

double normal_quantile(double confidence) {
    return boost::math::quantile(boost::math::normal(), 0.5 + 0.5 * confidence);
}

}  // namespace

ScalingFit fit_line(std::vector<std::pair<double, double>> points) {
    const auto n = points.size();
    if (n < 3) throw std::invalid_argument("fit_line needs at least 3 points");
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : points) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("fit_line needs at least two distinct x values");
    ScalingFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double sse = 0.0;
    for (const auto& [x, y] : points) {
        const double r = y - (fit.intercept + fit.slope * x);
        sse += r * r;
    }
    fit.r2 = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
    fit.stderr_slope = std::sqrt(sse / static_cast<double>(n - 2) / sxx);
    fit.points = std::move(points);
    return fit;
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double confidence) {
    if (trials == 0) return {0.0, 1.0};
    const double z = normal_quantile(confidence);
    const double nt = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / nt;
    const double denom = 1.0 + z * z / nt;
    const double centre = (phat + z * z / (2.0 * nt)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / nt + z * z / (4.0 * nt * nt)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

SampleSummary summarize_sample(std::span<const double> values, double confidence) {
    SampleSummary s;
    s.count = values.size();
    if (s.count == 0) return s;
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(s.count);
    s.mean_ci = {s.mean, s.mean};
    if (s.count < 2) return s;
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    const double dof = static_cast<double>(s.count - 1);
    s.sd = std::sqrt(ss / dof);
    const double tq = boost::math::quantile(boost::math::students_t(dof), 0.5 + 0.5 * confidence);
    const double half = tq * s.sd / std::sqrt(static_cast<double>(s.count));
    s.mean_ci = {s.mean - half, s.mean + half};
    const boost::math::chi_squared chi(dof);
    const double a = 0.5 * (1.0 - confidence);
    s.sd_ci = {std::sqrt(ss / boost::math::quantile(chi, 1.0 - a)), std::sqrt(ss / boost::math::quantile(chi, a))};
    return s;
}

MedianEstimate median_with_ci(std::vector<double> values, double confidence) {
    MedianEstimate m;
    const auto n = values.size();
    if (n == 0) return m;
    std::sort(values.begin(), values.end());
    m.median = n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    // Order statistics X_(j) <= median <= X_(k), with j the largest index such
    // that P(Bin(n, 1/2) < j) <= alpha/2 and k symmetric.
    const double a = 0.5 * (1.0 - confidence);
    const boost::math::binomial bin(static_cast<double>(n), 0.5);
    std::size_t j = 0;
    while (j + 1 <= n / 2 && boost::math::cdf(bin, static_cast<double>(j)) <= a) ++j;
    const std::size_t lo = j == 0 ? 0 : j - 1;
    const std::size_t hi = n - 1 - lo;
    m.ci = {values[lo], values[hi]};
    return m;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic needs non-empty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double ks_two_sample_pvalue(std::span<const double> a, std::span<const double> b) {
    const double d = ks_statistic({a.begin(), a.end()}, {b.begin(), b.end()});
    const double ne = static_cast<double>(a.size()) * static_cast<double>(b.size()) /
                      static_cast<double>(a.size() + b.size());
    const double sq = std::sqrt(ne);
    const double lambda = (sq + 0.12 + 0.11 / sq) * d;
    if (lambda < 1e-3) return 1.0;
    // Kolmogorov survival function Q(lambda) = 2 sum (-1)^(k-1) exp(-2 k^2 lambda^2).
    double sum = 0.0;
    for (int k = 1; k <= 200; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace ksrg
