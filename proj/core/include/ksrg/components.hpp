#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ksrg/ext_real.hpp"
#include "ksrg/graph.hpp"

namespace ksrg {

/// Union-find with path halving and union by size.
class DisjointSets {
public:
    DisjointSets() = default;
    explicit DisjointSets(std::size_t n) { reset(n); }

    void reset(std::size_t n);

    VertexId find(VertexId v) {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }

    /// Returns true if the two sets were distinct.
    bool unite(VertexId a, VertexId b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    std::uint32_t set_size(VertexId v) { return size_[find(v)]; }
    std::size_t size() const { return parent_.size(); }

private:
    std::vector<VertexId> parent_;
    std::vector<std::uint32_t> size_;
};

struct ComponentSummary {
    std::size_t num_vertices = 0;
    std::vector<std::size_t> sizes;  // descending
    std::size_t giant_size = 0;
    std::size_t second_size = 0;
    std::map<std::size_t, std::size_t> size_census;  // l -> number of size-l components
    std::optional<VertexId> giant_representative;  // smallest id in the giant
    std::optional<bool> origin_in_giant;
    std::optional<std::size_t> origin_cluster_size;
};

/// Summary of the partition held by `sets` over vertices 0..n-1. The giant
/// is the largest component; among equally large ones, the one containing
/// the smallest vertex id.
ComponentSummary summarize(DisjointSets& sets, std::optional<VertexId> origin = std::nullopt);

ComponentSummary components(const SpatialGraph& graph);

/// Component label (smallest member id) for every vertex.
std::vector<VertexId> component_labels(const SpatialGraph& graph);

/// Throws std::logic_error unless sum(sizes) = |V|, sum(l * S_l) = |V| and
/// giant >= second.
void check_summary_identities(const ComponentSummary& summary);

/// Induced subgraph on vertices with mark in [1, wmax). Ids are compacted in
/// increasing order; the origin is kept if it survives.
SpatialGraph restrict_marks(const SpatialGraph& graph, ExtReal wmax);

/// Induced subgraph on vertices inside the centred box of volume m.
SpatialGraph restrict_to_box(const SpatialGraph& graph, double m);

/// Vertices u in Lambda_n (Lambda_{n/2} if half) with an edge to some v
/// outside Lambda_n and w_u >= w_v. Throws Error{Geometry} unless the
/// graph's sampling region strictly contains Lambda_n.
std::size_t downward_boundary_count(const SpatialGraph& graph, double inner_volume, bool half);

/// Edges between Lambda_{n/2} x [1, w_max] and Lambda_n^c x [1, w_max] with
/// w_max = n^(1/(tau-1)), or unbounded when tau = inf.
std::size_t edge_boundary_count(const SpatialGraph& graph, double inner_volume, const ExtReal& tau);

}  // namespace ksrg
