#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "ksrg/params.hpp"
#include "ksrg/random.hpp"
#include "ksrg/vertex_set.hpp"

namespace ksrg {

/// Inner box Lambda_n of volume n and the centred sampling region around
/// it, whose side is `enlargement` times the inner side. Boxes are
/// half-open: [-s/2, s/2)^d.
struct BoxSpec {
    double volume = 1.0;
    int d = 1;
    double enlargement = 1.0;

    double side() const;
    double region_side() const { return side() * enlargement; }
    double region_volume() const;

    bool in_inner(std::span<const double> x) const { return in_box(x, volume); }
    bool in_region(std::span<const double> x) const;
    /// Membership in Lambda_m, the centred half-open box of volume m.
    bool in_box(std::span<const double> x, double m) const;
};

inline constexpr double kDefaultVertexBudget = 1e8;

/// Mark with P(W >= w) = w^-(tau-1), by inverse transform of u in (0, 1].
/// Constant 1 when tau = inf.
double mark_from_uniform(double u, const ExtReal& tau);

/// Samples the marked vertex layer on the sampling region of `box`.
/// PPP: Poisson(region volume) uniform points; lattice: every integer point.
/// All positions are drawn first, then one uniform per vertex for its mark,
/// in id order. Throws Error{Capacity} if the expected count exceeds budget.
VertexSet sample_vertices(const BoxSpec& box, const ModelParams& params, std::uint64_t seed,
                          double vertex_budget = kDefaultVertexBudget);

/// As above, reusing the storage of `out`.
void sample_vertices(const BoxSpec& box, const ModelParams& params, std::uint64_t seed, VertexSet& out,
                     double vertex_budget = kDefaultVertexBudget);

/// Appends a vertex at the origin with a fresh mark and returns its id.
VertexId palm_insert_origin(VertexSet& vertices, const ModelParams& params, std::uint64_t seed);

/// First vertex at exactly the origin, if any (lattice Palm origin).
std::optional<VertexId> find_origin(const VertexSet& vertices);

}  // namespace ksrg
