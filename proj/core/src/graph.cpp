#include "ksrg/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ksrg/error.hpp"

namespace ksrg {

void check_graph_invariants(const SpatialGraph& graph) {
    const auto n = graph.num_vertices();
    std::vector<Edge> sorted = graph.edges;
    for (const Edge& e : sorted) {
        if (e.u == e.v) throw std::logic_error("self-loop at vertex " + std::to_string(e.u));
        if (e.u > e.v) throw std::logic_error("edge not stored as (min,max)");
        if (e.v >= n) throw std::logic_error("edge endpoint out of range");
    }
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::logic_error("duplicate edge");
    }
}

void write_edge_list(std::ostream& out, const SpatialGraph& graph) {
    const auto& vs = graph.vertices;
    out.precision(17);
    for (VertexId v = 0; v < vs.size(); ++v) {
        out << "# vertex " << v;
        for (double c : vs.position(v)) out << ' ' << c;
        out << ' ' << vs.mark(v) << '\n';
    }
    for (const Edge& e : graph.edges) out << e.u << ' ' << e.v << '\n';
}

SpatialGraph read_edge_list(std::istream& in) {
    SpatialGraph graph;
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::vector<double>> rows;
    std::vector<Edge> edges;
    int dim = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream fields(line);
        if (line[0] == '#') {
            std::string hash, tag;
            fields >> hash >> tag;
            if (tag != "vertex") continue;
            VertexId id = 0;
            fields >> id;
            std::vector<double> values;
            double x = 0.0;
            while (fields >> x) values.push_back(x);
            if (values.size() < 2 || id != rows.size()) {
                throw Error(ErrorCode::Parse, "bad vertex line " + std::to_string(line_no));
            }
            if (dim < 0) dim = static_cast<int>(values.size()) - 1;
            if (static_cast<int>(values.size()) - 1 != dim) {
                throw Error(ErrorCode::Parse, "inconsistent dimension at line " + std::to_string(line_no));
            }
            rows.push_back(std::move(values));
            continue;
        }
        VertexId u = 0, v = 0;
        if (!(fields >> u >> v)) throw Error(ErrorCode::Parse, "bad edge line " + std::to_string(line_no));
        edges.push_back(Edge::make(u, v));
    }
    graph.vertices = VertexSet(dim < 0 ? 1 : dim);
    for (const auto& row : rows) {
        graph.vertices.push_back(std::span<const double>(row.data(), row.size() - 1), row.back());
    }
    graph.edges = std::move(edges);
    graph.box.d = graph.vertices.dim();
    return graph;
}

}  // namespace ksrg
