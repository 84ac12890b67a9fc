#pragma once

#include <cstddef>
#include <map>
#include <optional>

#include "ksrg/ext_real.hpp"

namespace ksrg {

/// Estimated law of the origin cluster. theta_hat is the fraction of
/// replicates with the origin in the giant of Lambda_n (a finite-box proxy
/// for 0 <-> infinity); pmf[l] the fraction with |C_n(0)| = l outside the
/// giant; tail_mass the rest.
struct ClusterLawEstimate {
    double theta_hat = 0.0;
    std::map<std::size_t, double> pmf;
    double tail_mass = 0.0;
    std::size_t replicates = 0;
    double n_used = 0.0;
    std::size_t ell_max = 64;
    /// Average over replicates of l * S_{n,l} / |V| over non-giant
    /// components, for l <= ell_max.
    std::map<std::size_t, double> census_pmf;
};

/// Throws std::logic_error if an entry is negative or the masses do not sum
/// to 1 within 1e-12.
void check_cluster_law(const ClusterLawEstimate& law);

struct TailAnalysis {
    double hubs_value = 1.0;
    long h_up = 1;
    long h_lo = 1;
    ExtReal rate_I = 0.0;
    /// hubs from the truncated sum with the tail mass dropped; a lower
    /// bracket for hubs_value. Absent when that inversion is not attainable.
    std::optional<double> hubs_lower;
    double z_star = 1.0;
};

/// Tolerance for deciding that hubs is an integer.
inline constexpr double kHubsIntegerTolerance = 1e-9;

/// Inverts H(z) = sum_l theta_l z^l + tail_mass * z^(l_max + 1) at 1 - rho
/// and sets hubs = log z* / log(1 - p). p = 1 gives hubs = 1. Throws
/// Error{OutOfRange} unless 1 - rho lies in (tail_mass, 1 - theta_hat] and
/// p in (0, 1].
TailAnalysis hubs(double rho, double p, const ClusterLawEstimate& law, const ExtReal& tau);

}  // namespace ksrg
