#pragma once

#include <compare>
#include <iosfwd>
#include <optional>
#include <vector>

#include "ksrg/pointprocess.hpp"
#include "ksrg/vertex_set.hpp"

namespace ksrg {

/// Undirected edge stored as (min, max).
struct Edge {
    VertexId u = 0;
    VertexId v = 0;

    static Edge make(VertexId a, VertexId b) { return a < b ? Edge{a, b} : Edge{b, a}; }
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct SpatialGraph {
    VertexSet vertices;
    std::vector<Edge> edges;
    BoxSpec box;
    std::optional<VertexId> origin;

    std::size_t num_vertices() const { return vertices.size(); }
};

/// Throws std::logic_error naming the first violated invariant: self-loop,
/// duplicate edge, out-of-range endpoint, or an edge not stored as (min,max).
void check_graph_invariants(const SpatialGraph& graph);

/// Text export: one "# vertex id x1 .. xd w" header line per vertex, then one
/// "u v" line per edge.
void write_edge_list(std::ostream& out, const SpatialGraph& graph);

/// Reads the format written by write_edge_list. Box metadata is not part of
/// the format; the returned graph has a default box of matching dimension.
SpatialGraph read_edge_list(std::istream& in);

}  // namespace ksrg
