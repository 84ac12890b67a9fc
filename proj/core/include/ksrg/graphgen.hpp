#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ksrg/graph.hpp"
#include "ksrg/model.hpp"
#include "ksrg/params.hpp"
#include "ksrg/random.hpp"
#include "ksrg/vertex_set.hpp"

namespace ksrg {

struct GeneratorOptions {
    /// Naive generation is refused above this many vertices.
    std::size_t naive_max_vertices = 50'000;
    /// Target mean occupancy of the finest grid cells.
    double target_occupancy = 4.0;
    /// Mark layers span [base^i, base^(i+1)).
    double layer_base = 2.0;
};

/// Reference generator: every unordered pair {u < v}, in id order, is kept
/// independently with its exact connection probability.
SpatialGraph generate_naive(VertexSet vertices, const ModelParams& params, std::uint64_t seed,
                            std::optional<BoxSpec> box = std::nullopt, const GeneratorOptions& options = {});

/// Accelerated exact generator, equal in distribution to generate_naive.
SpatialGraph generate_cellgrid(VertexSet vertices, const ModelParams& params, std::uint64_t seed,
                               std::optional<BoxSpec> box = std::nullopt, const GeneratorOptions& options = {});

/// Reusable state for the accelerated generator.
///
/// Vertices are split into mark layers and, inside a layer, ordered along a
/// Morton curve of a dyadic grid over their bounding cube, so every grid cell
/// at every level is a contiguous range. For each pair of layers the grid
/// hierarchy is walked from the root. Adjacent cells are refined until the
/// level where the cell volume reaches beta * kappa(layer maxima); there all
/// pairs are drawn one by one. Non-adjacent cells met on the way are far
/// pairs: candidates are drawn with the dominating probability
/// p(kappa(layer maxima), min cell distance) by geometric skips and each is
/// kept with probability p(u,v) / p_bar.
///
/// In one dimension the grid walk is replaced by a sweep: each layer is
/// sorted by position and, for each layer pair, partners to the right of
/// vertices of the sparser layer are split, on both sides, into distance
/// shells [0, r], (r, 2r), [2r, 4r), ... with r = beta * kappa(layer
/// maxima). Shell boundaries are found by galloping search within a layer
/// and through a per-layer bucket table across layers, and each shell is
/// sampled by geometric skips at its dominating probability. The threshold
/// profile with p = 1 needs no random numbers: each source scans the targets
/// within beta * kappa(own mark, target layer maximum) and keeps those the
/// indicator accepts.
///
/// Random numbers are consumed in a fixed order (layer pairs ascending,
/// children in Morton order), so the edge set is a pure function of the
/// vertex set and the seed.
class CellGridSampler {
public:
    explicit CellGridSampler(const ModelParams& params, const GeneratorOptions& options = {});

    /// Appends the sampled edges (as (min,max) id pairs) to `out`.
    void sample(const VertexSet& vertices, std::uint64_t seed, std::vector<Edge>& out);

    /// Number of far-pair candidates that were thinned by the last call.
    std::uint64_t last_far_candidates() const { return far_candidates_; }

private:
    struct LayerPairContext;
    struct Shell {
        double lo = 0.0;  // smallest distance in the shell; shell 0 starts at 0
        double p_bar = 1.0;
        double log_q = 0.0;  // log(1 - p_bar)
        // Pending geometric gaps, carried across sources.
        double skip_right = 0.0;
        double skip_left = 0.0;
    };

    void build_index(const VertexSet& vertices);
    void build_index_1d(const VertexSet& vertices);
    void sample_1d();
    void sweep_1d(std::uint32_t source_layer, std::uint32_t target_layer);
    void window_1d(std::uint32_t source_layer, std::uint32_t target_layer);
    template <typename Pred>
    std::uint32_t seek_1d(std::uint32_t layer, double y, Pred before) const;
    void visit(const LayerPairContext& ctx, int level, const std::uint64_t* cell_a, const std::uint64_t* cell_b,
               std::uint32_t a0, std::uint32_t a1, std::uint32_t b0, std::uint32_t b1, bool same);
    void near_pairs(const LayerPairContext& ctx, std::uint32_t a0, std::uint32_t a1, std::uint32_t b0,
                    std::uint32_t b1, bool same);
    void far_pairs(const LayerPairContext& ctx, int level, const std::uint64_t* cell_a,
                   const std::uint64_t* cell_b, std::uint32_t a0, std::uint32_t a1, std::uint32_t b0,
                   std::uint32_t b1);
    std::uint32_t child_end(std::uint32_t begin, std::uint32_t end, int level, std::uint64_t child) const;

    ModelParams params_;
    ConnectionRule rule_;
    GeneratorOptions options_;
    int dim_ = 1;

    // Index over the current vertex set, sorted by (layer, Morton code).
    int max_level_ = 0;
    double cube_side_ = 1.0;
    std::vector<std::uint64_t> codes_;
    std::vector<VertexId> ids_;
    std::vector<double> coords_;
    std::vector<double> marks_;
    std::vector<std::uint32_t> layer_begin_;
    std::vector<double> layer_max_mark_;

    // Scratch.
    std::vector<std::uint32_t> layer_of_;
    std::vector<std::uint64_t> raw_codes_;
    std::vector<std::uint32_t> order_;
    std::vector<std::uint32_t> order_tmp_;
    std::vector<std::uint32_t> counts_;
    std::vector<Shell> shells_;
    // Per layer in 1D: bucket b of position x is floor((x - lo) * scale)
    // clamped to [0, B]; bucket_first_ holds, from bucket_offset_[l], the
    // first index of the layer with bucket >= b for b = 0..B.
    std::vector<double> bucket_lo_;
    std::vector<double> bucket_scale_;
    std::vector<std::uint32_t> bucket_count_;
    std::vector<std::uint32_t> bucket_offset_;
    std::vector<std::uint32_t> bucket_first_;
    std::vector<std::uint32_t> right_ptr_;
    std::vector<std::uint32_t> left_ptr_;

    Rng rng_;
    std::vector<Edge>* out_ = nullptr;
    std::uint64_t far_candidates_ = 0;
};

}  // namespace ksrg
