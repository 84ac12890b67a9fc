#include "ksrg/hubs.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ksrg/error.hpp"

namespace ksrg {

void check_cluster_law(const ClusterLawEstimate& law) {
    double total = law.theta_hat + law.tail_mass;
    bool negative = law.theta_hat < 0.0 || law.tail_mass < 0.0;
    for (const auto& [ell, mass] : law.pmf) {
        total += mass;
        negative = negative || mass < 0.0;
    }
    if (negative) throw std::logic_error("cluster law has a negative entry");
    if (std::abs(total - 1.0) > 1e-12) throw std::logic_error("cluster law masses do not sum to 1");
}

namespace {

/// Largest z in [0, 1] with h(z) <= target, for increasing h with h(0) = 0.
template <typename H>
double invert_increasing(H h, double target) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (h(mid) <= target ? lo : hi) = mid;
    }
    return std::abs(h(hi) - target) < std::abs(h(lo) - target) ? hi : lo;
}

}  // namespace

TailAnalysis hubs(double rho, double p, const ClusterLawEstimate& law, const ExtReal& tau) {
    if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorCode::OutOfRange, "p must lie in (0, 1]");
    TailAnalysis t;
    auto finish = [&] {
        t.h_up = static_cast<long>(std::ceil(t.hubs_value - kHubsIntegerTolerance));
        const bool integral = std::abs(t.hubs_value - std::round(t.hubs_value)) <= kHubsIntegerTolerance;
        t.h_lo = integral && p < 1.0 ? std::lround(t.hubs_value) + 1 : t.h_up;
        if (tau.is_pos_inf()) {
            t.rate_I = ExtReal::pos_inf();
        } else {
            t.rate_I = (tau.value() - 2.0) * static_cast<double>(t.h_up);
        }
        return t;
    };
    if (p == 1.0) {
        t.hubs_value = 1.0;
        t.hubs_lower = 1.0;
        return finish();
    }
    const double target = 1.0 - rho;
    if (!(target > law.tail_mass && target <= 1.0 - law.theta_hat)) {
        throw Error(ErrorCode::OutOfRange, "1 - rho = " + std::to_string(target) +
                                               " is outside (tail_mass, 1 - theta_hat] of the cluster law");
    }
    auto truncated = [&](double z) {
        double h = 0.0;
        for (const auto& [ell, mass] : law.pmf) h += mass * std::pow(z, static_cast<double>(ell));
        return h;
    };
    const auto tail_power = static_cast<double>(law.ell_max + 1);
    auto full = [&](double z) { return truncated(z) + law.tail_mass * std::pow(z, tail_power); };

    const double log1mp = std::log1p(-p);
    t.z_star = invert_increasing(full, target);
    t.hubs_value = std::log(t.z_star) / log1mp;
    if (target <= truncated(1.0)) t.hubs_lower = std::log(invert_increasing(truncated, target)) / log1mp;
    return finish();
}

}  // namespace ksrg
