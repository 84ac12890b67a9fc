#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ksrg {

using VertexId = std::uint32_t;

/// Non-owning view of one marked vertex (x_u, w_u).
struct MarkedVertex {
    VertexId id = 0;
    std::span<const double> position;
    double mark = 1.0;
};

/// Owning, structure-of-arrays store of marked vertices. Ids are dense
/// indices 0..size()-1.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int dim) : dim_(dim) {}

    /// Empties the set and sets its dimension; capacity is kept.
    void reset(int dim) {
        dim_ = dim;
        coords_.clear();
        marks_.clear();
    }

    int dim() const { return dim_; }
    std::size_t size() const { return marks_.size(); }
    bool empty() const { return marks_.empty(); }

    void reserve(std::size_t n) {
        coords_.reserve(n * static_cast<std::size_t>(dim_));
        marks_.reserve(n);
    }

    /// Appends a vertex and returns its id. Throws std::invalid_argument if
    /// the position has the wrong dimension or the mark is below 1.
    VertexId push_back(std::span<const double> position, double mark);

    std::span<const double> position(VertexId id) const {
        return {coords_.data() + static_cast<std::size_t>(id) * dim_, static_cast<std::size_t>(dim_)};
    }
    double mark(VertexId id) const { return marks_[id]; }
    MarkedVertex operator[](VertexId id) const { return {id, position(id), marks_[id]}; }

    const std::vector<double>& coords() const { return coords_; }
    const std::vector<double>& marks() const { return marks_; }
    std::vector<double>& mutable_marks() { return marks_; }
    std::vector<double>& mutable_coords() { return coords_; }

private:
    int dim_ = 1;
    std::vector<double> coords_;
    std::vector<double> marks_;
};

}  // namespace ksrg
