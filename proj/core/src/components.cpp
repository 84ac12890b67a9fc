#include "ksrg/components.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ksrg/error.hpp"

namespace ksrg {

void DisjointSets::reset(std::size_t n) {
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), VertexId{0});
    size_.assign(n, 1);
}

ComponentSummary summarize(DisjointSets& sets, std::optional<VertexId> origin) {
    ComponentSummary s;
    const std::size_t n = sets.size();
    s.num_vertices = n;
    std::optional<VertexId> giant_root;
    std::size_t best = 0;
    for (VertexId v = 0; v < n; ++v) {
        const VertexId r = sets.find(v);
        if (r != v) continue;
        const std::size_t size = sets.set_size(r);
        s.sizes.push_back(size);
        ++s.size_census[size];
    }
    // Giant tie-break: the first vertex (in id order) of a maximal component.
    for (VertexId v = 0; v < n; ++v) {
        const std::size_t size = sets.set_size(v);
        if (size > best) {
            best = size;
            giant_root = sets.find(v);
            s.giant_representative = v;
        }
    }
    std::sort(s.sizes.begin(), s.sizes.end(), std::greater<>());
    s.giant_size = s.sizes.empty() ? 0 : s.sizes[0];
    s.second_size = s.sizes.size() < 2 ? 0 : s.sizes[1];
    if (origin) {
        const VertexId r = sets.find(*origin);
        s.origin_in_giant = giant_root && r == *giant_root;
        s.origin_cluster_size = sets.set_size(r);
    }
    return s;
}

ComponentSummary components(const SpatialGraph& graph) {
    DisjointSets sets(graph.num_vertices());
    for (const Edge& e : graph.edges) sets.unite(e.u, e.v);
    return summarize(sets, graph.origin);
}

std::vector<VertexId> component_labels(const SpatialGraph& graph) {
    DisjointSets sets(graph.num_vertices());
    for (const Edge& e : graph.edges) sets.unite(e.u, e.v);
    std::vector<VertexId> label(graph.num_vertices());
    std::vector<VertexId> smallest(graph.num_vertices(), static_cast<VertexId>(-1));
    for (VertexId v = 0; v < label.size(); ++v) {
        const VertexId r = sets.find(v);
        if (smallest[r] == static_cast<VertexId>(-1)) smallest[r] = v;
        label[v] = smallest[r];
    }
    return label;
}

void check_summary_identities(const ComponentSummary& s) {
    const std::size_t total = std::accumulate(s.sizes.begin(), s.sizes.end(), std::size_t{0});
    if (total != s.num_vertices) throw std::logic_error("component sizes do not sum to |V|");
    std::size_t weighted = 0;
    for (const auto& [ell, count] : s.size_census) weighted += ell * count;
    if (weighted != s.num_vertices) throw std::logic_error("sum of l * S_l differs from |V|");
    if (s.giant_size < s.second_size) throw std::logic_error("giant smaller than second component");
}

namespace {

template <typename Keep>
SpatialGraph induced_subgraph(const SpatialGraph& graph, Keep keep) {
    const auto n = graph.num_vertices();
    constexpr auto kDropped = static_cast<VertexId>(-1);
    std::vector<VertexId> remap(n, kDropped);
    SpatialGraph out;
    out.box = graph.box;
    out.vertices = VertexSet(graph.vertices.dim());
    for (VertexId v = 0; v < n; ++v) {
        if (keep(v)) remap[v] = out.vertices.push_back(graph.vertices.position(v), graph.vertices.mark(v));
    }
    for (const Edge& e : graph.edges) {
        if (remap[e.u] != kDropped && remap[e.v] != kDropped) out.edges.push_back(Edge::make(remap[e.u], remap[e.v]));
    }
    if (graph.origin && remap[*graph.origin] != kDropped) out.origin = remap[*graph.origin];
    return out;
}

void require_strict_containment(const SpatialGraph& graph, double inner_volume) {
    if (!(graph.box.region_volume() > inner_volume) || !(inner_volume > 0.0)) {
        throw Error(ErrorCode::Geometry, "sampling region must strictly contain Lambda_n");
    }
}

}  // namespace

SpatialGraph restrict_marks(const SpatialGraph& graph, ExtReal wmax) {
    const double limit = wmax.as_double();
    return induced_subgraph(graph, [&](VertexId v) { return graph.vertices.mark(v) < limit; });
}

SpatialGraph restrict_to_box(const SpatialGraph& graph, double m) {
    return induced_subgraph(graph, [&](VertexId v) { return graph.box.in_box(graph.vertices.position(v), m); });
}

std::size_t downward_boundary_count(const SpatialGraph& graph, double inner_volume, bool half) {
    require_strict_containment(graph, inner_volume);
    const auto& vs = graph.vertices;
    const double source_volume = half ? 0.5 * inner_volume : inner_volume;
    std::vector<char> inside(vs.size()), source(vs.size()), counted(vs.size(), 0);
    for (VertexId v = 0; v < vs.size(); ++v) {
        inside[v] = graph.box.in_box(vs.position(v), inner_volume);
        source[v] = inside[v] && graph.box.in_box(vs.position(v), source_volume);
    }
    std::size_t count = 0;
    auto consider = [&](VertexId u, VertexId v) {
        if (source[u] && !inside[v] && !counted[u] && vs.mark(u) >= vs.mark(v)) {
            counted[u] = 1;
            ++count;
        }
    };
    for (const Edge& e : graph.edges) {
        consider(e.u, e.v);
        consider(e.v, e.u);
    }
    return count;
}

std::size_t edge_boundary_count(const SpatialGraph& graph, double inner_volume, const ExtReal& tau) {
    require_strict_containment(graph, inner_volume);
    const auto& vs = graph.vertices;
    const double wmax = tau.is_pos_inf() ? std::numeric_limits<double>::infinity()
                                         : std::pow(inner_volume, 1.0 / (tau.value() - 1.0));
    auto inner_half = [&](VertexId v) {
        return vs.mark(v) <= wmax && graph.box.in_box(vs.position(v), 0.5 * inner_volume);
    };
    auto outside = [&](VertexId v) {
        return vs.mark(v) <= wmax && !graph.box.in_box(vs.position(v), inner_volume);
    };
    std::size_t count = 0;
    for (const Edge& e : graph.edges) {
        if ((inner_half(e.u) && outside(e.v)) || (inner_half(e.v) && outside(e.u))) ++count;
    }
    return count;
}

}  // namespace ksrg
