#include "ksrg/pointprocess.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "ksrg/error.hpp"

namespace ksrg {

double BoxSpec::side() const { return std::pow(volume, 1.0 / d); }

double BoxSpec::region_volume() const { return volume * std::pow(enlargement, d); }

bool BoxSpec::in_box(std::span<const double> x, double m) const {
    const double half = 0.5 * std::pow(m, 1.0 / d);
    for (double c : x) {
        if (c < -half || c >= half) return false;
    }
    return true;
}

bool BoxSpec::in_region(std::span<const double> x) const {
    const double half = 0.5 * region_side();
    for (double c : x) {
        if (c < -half || c >= half) return false;
    }
    return true;
}

double mark_from_uniform(double u, const ExtReal& tau) {
    if (tau.is_pos_inf()) return 1.0;
    return std::pow(u, -1.0 / (tau.value() - 1.0));
}

namespace {

void fill_marks(VertexSet& vertices, const ModelParams& params, Rng& rng) {
    auto& marks = vertices.mutable_marks();
    if (params.constant_marks()) {
        std::fill(marks.begin(), marks.end(), 1.0);
        return;
    }
    for (double& w : marks) w = mark_from_uniform(uniform01_open_low(rng), params.tau);
}

// One dimension: arrival times of a unit-rate Poisson process started at the
// left edge, so positions come out in increasing order.
void sample_ppp_sorted_1d(const BoxSpec& box, Rng& rng, VertexSet& out) {
    const double side = box.region_side();
    const double half = 0.5 * side;
    auto& coords = out.mutable_coords();
    coords.clear();
    coords.reserve(static_cast<std::size_t>(side + 6.0 * std::sqrt(side) + 16.0));
    double x = -half;
    for (;;) {
        x -= std::log(uniform01_open_low(rng));
        if (!(x < half)) break;
        coords.push_back(x);
    }
    out.mutable_marks().assign(coords.size(), 1.0);
}

void sample_ppp(const BoxSpec& box, Rng& rng, VertexSet& out) {
    if (box.d == 1) {
        sample_ppp_sorted_1d(box, rng, out);
        return;
    }
    const double side = box.region_side();
    const double half = 0.5 * side;
    std::poisson_distribution<std::int64_t> count_dist(box.region_volume());
    const auto count = static_cast<std::size_t>(count_dist(rng));
    const auto d = static_cast<std::size_t>(box.d);
    auto& coords = out.mutable_coords();
    coords.resize(count * d);
    const double upper = std::nextafter(half, 0.0);
    for (double& c : coords) {
        c = std::min(-half + uniform01(rng) * side, upper);
    }
    out.mutable_marks().assign(count, 1.0);
}

void sample_lattice(const BoxSpec& box, VertexSet& out) {
    const double half = 0.5 * box.region_side();
    const auto lo = static_cast<std::int64_t>(std::ceil(-half));
    const auto hi = static_cast<std::int64_t>(std::ceil(half));  // exclusive
    const auto per_axis = static_cast<std::size_t>(std::max<std::int64_t>(0, hi - lo));
    const auto d = static_cast<std::size_t>(box.d);
    std::size_t total = 1;
    for (std::size_t k = 0; k < d; ++k) total *= per_axis;
    if (per_axis == 0) total = 0;

    auto& coords = out.mutable_coords();
    coords.resize(total * d);
    std::vector<std::int64_t> idx(d, lo);
    for (std::size_t v = 0; v < total; ++v) {
        for (std::size_t k = 0; k < d; ++k) coords[v * d + k] = static_cast<double>(idx[k]);
        for (std::size_t k = d; k-- > 0;) {
            if (++idx[k] < hi) break;
            idx[k] = lo;
        }
    }
    out.mutable_marks().assign(total, 1.0);
}

}  // namespace

VertexSet sample_vertices(const BoxSpec& box, const ModelParams& params, std::uint64_t seed,
                          double vertex_budget) {
    VertexSet out(params.d);
    sample_vertices(box, params, seed, out, vertex_budget);
    return out;
}

void sample_vertices(const BoxSpec& box, const ModelParams& params, std::uint64_t seed, VertexSet& out,
                     double vertex_budget) {
    validate(params);
    if (box.d != params.d) throw Error(ErrorCode::RejectInconsistent, "box and model dimension differ");
    if (!(box.volume > 0.0) || !(box.enlargement >= 1.0)) {
        throw Error(ErrorCode::RejectDomain, "box volume must be > 0 and enlargement >= 1");
    }
    if (box.region_volume() > vertex_budget) {
        throw Error(ErrorCode::Capacity, "expected vertex count " + std::to_string(box.region_volume()) +
                                             " exceeds budget " + std::to_string(vertex_budget));
    }

    Rng rng(seed);
    out.reset(params.d);
    if (params.vertex_process == VertexProcess::Ppp) {
        sample_ppp(box, rng, out);
    } else {
        sample_lattice(box, out);
    }
    fill_marks(out, params, rng);
}

VertexId palm_insert_origin(VertexSet& vertices, const ModelParams& params, std::uint64_t seed) {
    Rng rng(seed);
    const double mark = params.constant_marks() ? 1.0 : mark_from_uniform(uniform01_open_low(rng), params.tau);
    const std::vector<double> origin(static_cast<std::size_t>(vertices.dim()), 0.0);
    return vertices.push_back(origin, mark);
}

std::optional<VertexId> find_origin(const VertexSet& vertices) {
    for (VertexId v = 0; v < vertices.size(); ++v) {
        const auto x = vertices.position(v);
        if (std::all_of(x.begin(), x.end(), [](double c) { return c == 0.0; })) return v;
    }
    return std::nullopt;
}

}  // namespace ksrg
