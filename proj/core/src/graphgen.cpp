#include "ksrg/graphgen.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ksrg/error.hpp"

namespace ksrg {

namespace {

constexpr int kMaxGridDim = 8;
constexpr int kMortonBits = 60;
// Relative slack on the minimum cell distance; absorbs rounding in the
// grid assignment so p_bar stays an upper bound.
constexpr double kDistanceSlack = 1e-9;

using Cell = std::array<std::uint64_t, kMaxGridDim>;

inline double dist_pow(const double* a, const double* b, int d) {
    if (d == 1) return std::abs(a[0] - b[0]);
    double sq = 0.0;
    for (int k = 0; k < d; ++k) {
        const double diff = a[k] - b[k];
        sq += diff * diff;
    }
    if (d == 2) return sq;
    if (d % 2 == 0) return std::pow(sq, d / 2);
    return std::pow(std::sqrt(sq), d);
}

BoxSpec bounding_box(const VertexSet& vertices) {
    BoxSpec box;
    box.d = vertices.dim();
    double extent = 0.0;
    const auto d = static_cast<std::size_t>(box.d);
    for (std::size_t k = 0; k < d; ++k) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::size_t v = 0; v < vertices.size(); ++v) {
            lo = std::min(lo, vertices.coords()[v * d + k]);
            hi = std::max(hi, vertices.coords()[v * d + k]);
        }
        if (vertices.size() > 0) extent = std::max(extent, 2.0 * std::max(std::abs(lo), std::abs(hi)));
    }
    box.volume = extent > 0.0 ? std::pow(extent, box.d) : 1.0;
    return box;
}

SpatialGraph make_graph(VertexSet vertices, std::vector<Edge> edges, std::optional<BoxSpec> box) {
    SpatialGraph graph;
    graph.box = box ? *box : bounding_box(vertices);
    graph.vertices = std::move(vertices);
    std::sort(edges.begin(), edges.end());
    graph.edges = std::move(edges);
    return graph;
}

}  // namespace

SpatialGraph generate_naive(VertexSet vertices, const ModelParams& params, std::uint64_t seed,
                            std::optional<BoxSpec> box, const GeneratorOptions& options) {
    validate(params);
    const std::size_t n = vertices.size();
    if (n > options.naive_max_vertices) {
        throw Error(ErrorCode::Capacity, "naive generator refuses " + std::to_string(n) + " vertices (limit " +
                                             std::to_string(options.naive_max_vertices) + ")");
    }
    const ConnectionRule rule(params);
    Rng rng(seed);
    std::vector<Edge> edges;
    for (VertexId u = 0; u < n; ++u) {
        const auto xu = vertices.position(u);
        const double wu = vertices.mark(u);
        for (VertexId v = u + 1; v < n; ++v) {
            const double q = rule.pair_prob(wu, xu, vertices.mark(v), vertices.position(v));
            if (q >= 1.0 || (q > 0.0 && uniform01(rng) < q)) edges.push_back({u, v});
        }
    }
    return make_graph(std::move(vertices), std::move(edges), box);
}

SpatialGraph generate_cellgrid(VertexSet vertices, const ModelParams& params, std::uint64_t seed,
                               std::optional<BoxSpec> box, const GeneratorOptions& options) {
    CellGridSampler sampler(params, options);
    std::vector<Edge> edges;
    sampler.sample(vertices, seed, edges);
    return make_graph(std::move(vertices), std::move(edges), box);
}

struct CellGridSampler::LayerPairContext {
    double kappa_max = 1.0;
    int target_level = 0;
};


CellGridSampler::CellGridSampler(const ModelParams& params, const GeneratorOptions& options)
    : params_(validate(params)), rule_(params), options_(options), dim_(params.d) {
    if (dim_ > kMaxGridDim) {
        throw Error(ErrorCode::RejectDomain, "cell-grid generator supports d <= " + std::to_string(kMaxGridDim));
    }
    if (!(options_.layer_base > 1.0)) throw Error(ErrorCode::RejectDomain, "layer_base must exceed 1");
}

void CellGridSampler::build_index(const VertexSet& vertices) {
    const std::size_t n = vertices.size();
    const int d = dim_;
    const auto du = static_cast<std::size_t>(d);
    const auto& in_coords = vertices.coords();

    std::array<double, kMaxGridDim> lo{};
    double extent = 0.0;
    for (int k = 0; k < d; ++k) {
        double mn = std::numeric_limits<double>::infinity();
        double mx = -mn;
        for (std::size_t v = 0; v < n; ++v) {
            mn = std::min(mn, in_coords[v * du + k]);
            mx = std::max(mx, in_coords[v * du + k]);
        }
        lo[k] = mn;
        extent = std::max(extent, mx - mn);
    }
    cube_side_ = extent > 0.0 ? extent * (1.0 + 0x1.0p-40) : 1.0;

    // Finest level: cells of side r0 with about target_occupancy vertices,
    // never below unit side.
    const double volume = std::pow(cube_side_, d);
    const double r0 = std::max(1.0, std::pow(options_.target_occupancy * volume / static_cast<double>(n), 1.0 / d));
    const int level_cap = kMortonBits / d;
    max_level_ = r0 >= cube_side_ ? 0 : std::clamp(static_cast<int>(std::floor(std::log2(cube_side_ / r0))), 0, level_cap);
    const int L = max_level_;
    const double scale = std::ldexp(1.0, L) / cube_side_;
    const std::uint64_t grid_max = (std::uint64_t{1} << L) - 1;

    raw_codes_.resize(n);
    layer_of_.resize(n);
    const double log_base = std::log(options_.layer_base);
    std::uint32_t num_layers = 0;
    for (std::size_t v = 0; v < n; ++v) {
        std::array<std::uint64_t, kMaxGridDim> g{};
        for (int k = 0; k < d; ++k) {
            const double t = (in_coords[v * du + k] - lo[k]) * scale;
            g[k] = std::min(static_cast<std::uint64_t>(std::max(t, 0.0)), grid_max);
        }
        std::uint64_t code = 0;
        for (int b = L - 1; b >= 0; --b) {
            std::uint64_t group = 0;
            for (int k = 0; k < d; ++k) group |= ((g[k] >> b) & 1U) << k;
            code = (code << d) | group;
        }
        raw_codes_[v] = code;
        const double w = vertices.mark(static_cast<VertexId>(v));
        const auto layer = static_cast<std::uint32_t>(options_.layer_base == 2.0 ? std::ilogb(w)
                                                                                  : std::floor(std::log(w) / log_base));
        layer_of_[v] = layer;
        num_layers = std::max(num_layers, layer + 1);
    }

    // Stable sort by Morton code, then stable counting sort by layer.
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0U);
    const std::uint64_t num_codes = std::uint64_t{1} << (d * L);
    if (num_codes <= 4 * n + 1024) {
        counts_.assign(num_codes + 1, 0);
        for (std::size_t v = 0; v < n; ++v) ++counts_[raw_codes_[v] + 1];
        for (std::uint64_t c = 0; c < num_codes; ++c) counts_[c + 1] += counts_[c];
        order_tmp_.resize(n);
        for (std::size_t v = 0; v < n; ++v) order_tmp_[counts_[raw_codes_[v]]++] = static_cast<std::uint32_t>(v);
        order_.swap(order_tmp_);
    } else {
        std::stable_sort(order_.begin(), order_.end(),
                         [&](std::uint32_t a, std::uint32_t b) { return raw_codes_[a] < raw_codes_[b]; });
    }
    counts_.assign(num_layers + 1, 0);
    for (std::size_t v = 0; v < n; ++v) ++counts_[layer_of_[v] + 1];
    for (std::uint32_t l = 0; l < num_layers; ++l) counts_[l + 1] += counts_[l];
    layer_begin_.assign(counts_.begin(), counts_.end());
    order_tmp_.resize(n);
    for (std::uint32_t v : order_) order_tmp_[counts_[layer_of_[v]]++] = v;

    codes_.resize(n);
    ids_.resize(n);
    marks_.resize(n);
    coords_.resize(n * du);
    layer_max_mark_.assign(num_layers, 0.0);
    for (std::size_t pos = 0; pos < n; ++pos) {
        const std::uint32_t v = order_tmp_[pos];
        codes_[pos] = raw_codes_[v];
        ids_[pos] = v;
        marks_[pos] = vertices.mark(v);
        std::copy_n(in_coords.begin() + static_cast<std::ptrdiff_t>(v * du), du, coords_.begin() + static_cast<std::ptrdiff_t>(pos * du));
        layer_max_mark_[layer_of_[v]] = std::max(layer_max_mark_[layer_of_[v]], marks_[pos]);
    }
}

void CellGridSampler::build_index_1d(const VertexSet& vertices) {
    const std::size_t n = vertices.size();
    const auto& x = vertices.coords();
    const auto [mn_it, mx_it] = std::minmax_element(x.begin(), x.end());
    const double lo = *mn_it;
    const double extent = *mx_it - lo;
    cube_side_ = extent > 0.0 ? extent : 1.0;

    // Bucket by coarse cell, then stable counting sort by layer, then finish
    // each layer with an insertion sort on the exact position. Input that is
    // already sorted (up to a trailing Palm origin) skips the bucket pass.
    layer_of_.resize(n);
    std::uint32_t num_layers = 0;
    const double log_base = std::log(options_.layer_base);
    const auto& w = vertices.marks();
    for (std::size_t v = 0; v < n; ++v) {
        std::uint32_t layer = 0;
        if (options_.layer_base == 2.0) {
            // Marks are >= 1 and finite, so the biased exponent is the layer.
            layer = static_cast<std::uint32_t>((std::bit_cast<std::uint64_t>(w[v]) >> 52) - 1023);
        } else {
            layer = static_cast<std::uint32_t>(std::floor(std::log(w[v]) / log_base));
        }
        layer_of_[v] = layer;
        num_layers = std::max(num_layers, layer + 1);
    }
    order_.resize(n);
    if (std::is_sorted(x.begin(), x.end() - 1)) {
        std::iota(order_.begin(), order_.end(), 0u);
    } else {
        const std::size_t buckets = std::max<std::size_t>(1, n / 2);
        const double scale = static_cast<double>(buckets) / (cube_side_ * (1.0 + 0x1.0p-40));
        raw_codes_.resize(n);
        counts_.assign(buckets + 1, 0);
        for (std::size_t v = 0; v < n; ++v) {
            const auto b =
                std::min<std::uint64_t>(static_cast<std::uint64_t>(std::max((x[v] - lo) * scale, 0.0)), buckets - 1);
            raw_codes_[v] = b;
            ++counts_[b + 1];
        }
        for (std::size_t b = 0; b < buckets; ++b) counts_[b + 1] += counts_[b];
        for (std::size_t v = 0; v < n; ++v) order_[counts_[raw_codes_[v]]++] = static_cast<std::uint32_t>(v);
    }

    counts_.assign(num_layers + 1, 0);
    for (std::size_t v = 0; v < n; ++v) ++counts_[layer_of_[v] + 1];
    for (std::uint32_t l = 0; l < num_layers; ++l) counts_[l + 1] += counts_[l];
    layer_begin_.assign(counts_.begin(), counts_.end());
    order_tmp_.resize(n);
    for (std::uint32_t v : order_) order_tmp_[counts_[layer_of_[v]]++] = v;

    ids_.resize(n);
    marks_.resize(n);
    coords_.resize(n);
    layer_max_mark_.assign(num_layers, 0.0);
    for (std::uint32_t l = 0; l < num_layers; ++l) {
        for (std::uint32_t pos = layer_begin_[l]; pos < layer_begin_[l + 1]; ++pos) {
            const std::uint32_t v = order_tmp_[pos];
            const double xv = x[v];
            const double wv = vertices.mark(v);
            std::uint32_t hole = pos;
            while (hole > layer_begin_[l] && coords_[hole - 1] > xv) {
                coords_[hole] = coords_[hole - 1];
                marks_[hole] = marks_[hole - 1];
                ids_[hole] = ids_[hole - 1];
                --hole;
            }
            coords_[hole] = xv;
            marks_[hole] = wv;
            ids_[hole] = v;
            layer_max_mark_[l] = std::max(layer_max_mark_[l], wv);
        }
    }

    bucket_lo_.assign(num_layers, 0.0);
    bucket_scale_.assign(num_layers, 0.0);
    bucket_count_.assign(num_layers, 0);
    bucket_offset_.assign(num_layers, 0);
    bucket_first_.clear();
    for (std::uint32_t l = 0; l < num_layers; ++l) {
        const std::uint32_t b0 = layer_begin_[l], b1 = layer_begin_[l + 1];
        bucket_offset_[l] = static_cast<std::uint32_t>(bucket_first_.size());
        if (b0 == b1) {
            bucket_first_.push_back(b0);
            continue;
        }
        const std::uint32_t count = b1 - b0;
        const double span = coords_[b1 - 1] - coords_[b0];
        bucket_lo_[l] = coords_[b0];
        bucket_scale_[l] = span > 0.0 ? static_cast<double>(count) / span : 0.0;
        bucket_count_[l] = count;
        std::uint32_t next = 0;
        for (std::uint32_t t = b0; t < b1; ++t) {
            const double v = (coords_[t] - bucket_lo_[l]) * bucket_scale_[l];
            const auto b = v >= count ? count : static_cast<std::uint32_t>(v);
            for (; next <= b; ++next) bucket_first_.push_back(t);
        }
        for (; next <= count; ++next) bucket_first_.push_back(b1);
    }
}

void CellGridSampler::sample_1d() {
    const auto num_layers = static_cast<std::uint32_t>(layer_max_mark_.size());
    for (std::uint32_t i = 0; i < num_layers; ++i) {
        const std::uint32_t a0 = layer_begin_[i], a1 = layer_begin_[i + 1];
        if (a0 == a1) continue;
        for (std::uint32_t j = i; j < num_layers; ++j) {
            const std::uint32_t b0 = layer_begin_[j], b1 = layer_begin_[j + 1];
            if (b0 == b1) continue;
            const double kappa_max = rule_.kernel(layer_max_mark_[i], layer_max_mark_[j]);
            const double reach = rule_.beta() * kappa_max;
            const std::uint32_t src = (i == j || a1 - a0 <= b1 - b0) ? i : j;
            const std::uint32_t dst = src == i ? j : i;
            if (rule_.threshold() && rule_.p() >= 1.0) {
                window_1d(src, dst);
                continue;
            }
            // Shell 0 holds distances <= reach, where p_bar = p. Shell k >= 1
            // starts just above reach * 2^(k-1). The last shell is unbounded
            // unless it is a p_bar = 0 sentinel.
            shells_.clear();
            shells_.push_back({0.0, rule_.p(), 0.0, 0.0, 0.0});
            double lo = std::nextafter(reach, std::numeric_limits<double>::infinity());
            while (lo <= cube_side_) {
                const double p_bar = rule_.prob(kappa_max, lo);
                shells_.push_back({lo, p_bar, 0.0, 0.0, 0.0});
                if (!(p_bar > 0.0)) break;
                lo *= 2.0;
            }
            for (Shell& s : shells_) {
                if (s.p_bar > 0.0 && s.p_bar < 1.0) {
                    s.log_q = std::log1p(-s.p_bar);
                    s.skip_right = std::floor(std::log(uniform01_open_low(rng_)) / s.log_q);
                    s.skip_left = std::floor(std::log(uniform01_open_low(rng_)) / s.log_q);
                }
            }
            sweep_1d(src, dst);
        }
    }
}

namespace {

/// First index in [ptr, end) where `before` turns false, given that it is
/// monotone (true then false) and ptr is a valid lower bound.
template <typename Pred>
std::uint32_t gallop(std::uint32_t ptr, std::uint32_t end, Pred before) {
    if (ptr >= end || !before(ptr)) return ptr;
    std::uint32_t lo = ptr;
    std::uint32_t step = 1;
    std::uint32_t hi = 0;
    for (;;) {
        hi = end - lo > step ? lo + step : end;
        if (hi == end || !before(hi)) break;
        lo = hi;
        step *= 2;
    }
    while (hi - lo > 1) {
        const std::uint32_t mid = lo + (hi - lo) / 2;
        (before(mid) ? lo : hi) = mid;
    }
    return hi;
}

}  // namespace

/// First index of `layer` where `before` turns false, starting from the
/// bucket of y and corrected with the exact predicate.
template <typename Pred>
std::uint32_t CellGridSampler::seek_1d(std::uint32_t layer, double y, Pred before) const {
    const std::uint32_t begin = layer_begin_[layer], end = layer_begin_[layer + 1];
    const std::uint32_t count = bucket_count_[layer];
    std::uint32_t b = 0;
    if (y > bucket_lo_[layer]) {
        const double v = (y - bucket_lo_[layer]) * bucket_scale_[layer];
        b = v >= count ? count : static_cast<std::uint32_t>(v);
    }
    std::uint32_t t = bucket_first_[bucket_offset_[layer] + b];
    while (t > begin && !before(t - 1)) --t;
    while (t < end && before(t)) ++t;
    return t;
}

void CellGridSampler::window_1d(std::uint32_t source_layer, std::uint32_t target_layer) {
    const bool self = source_layer == target_layer;
    const std::uint32_t s0 = layer_begin_[source_layer], s1 = layer_begin_[source_layer + 1];
    const std::uint32_t t1 = layer_begin_[target_layer + 1];
    const double target_max = layer_max_mark_[target_layer];
    const double* pos = coords_.data();
    for (std::uint32_t s = s0; s < s1; ++s) {
        const double xs = pos[s];
        const double ws = marks_[s];
        // Every partner lies strictly closer than this; the widening only
        // admits extra candidates, which the exact test below rejects.
        const double bound = rule_.beta() * rule_.kernel(ws, target_max) * (1.0 + 0x1.0p-50);
        std::uint32_t lo = s + 1;
        std::uint32_t hi = 0;
        if (self) {
            hi = gallop(lo, t1, [&](std::uint32_t t) { return pos[t] - xs < bound; });
        } else {
            lo = seek_1d(target_layer, xs - bound, [&](std::uint32_t t) { return !(xs - pos[t] < bound); });
            hi = seek_1d(target_layer, xs + bound, [&](std::uint32_t t) { return pos[t] - xs < bound; });
        }
        for (std::uint32_t t = lo; t < hi; ++t) {
            if (rule_.prob(rule_.kernel(ws, marks_[t]), std::abs(pos[t] - xs)) > 0.0) {
                out_->push_back(Edge::make(ids_[s], ids_[t]));
            }
        }
    }
}

void CellGridSampler::sweep_1d(std::uint32_t source_layer, std::uint32_t target_layer) {
    const bool self = source_layer == target_layer;
    const std::uint32_t s0 = layer_begin_[source_layer], s1 = layer_begin_[source_layer + 1];
    const std::uint32_t t0 = layer_begin_[target_layer], t1 = layer_begin_[target_layer + 1];
    const std::size_t num_shells = shells_.size();
    const double* pos = coords_.data();
    // right_ptr_[k]: first target with pos - xs >= lo_k (shell 0: >= 0, or
    // the next index when self); right_ptr_[K] = t1.
    // left_ptr_[k]: first target with xs - pos < lo_k (shell 0: pos >= xs);
    // the left part of shell k is [left_ptr_[k + 1], left_ptr_[k]) with
    // left_ptr_[K] = t0.
    right_ptr_.assign(num_shells + 1, t0);
    right_ptr_[num_shells] = t1;
    left_ptr_.assign(num_shells + 1, t0);

    for (std::uint32_t s = s0; s < s1; ++s) {
        const double xs = pos[s];
        const double ws = marks_[s];
        if (self) {
            right_ptr_[0] = s + 1;
        } else {
            right_ptr_[0] = seek_1d(target_layer, xs, [&](std::uint32_t t) { return pos[t] - xs < 0.0; });
            left_ptr_[0] = right_ptr_[0];
        }
        for (std::size_t k = 1; k < num_shells; ++k) {
            const double lo = shells_[k].lo;
            if (self) {
                right_ptr_[k] = gallop(std::max(right_ptr_[k], right_ptr_[0]), t1,
                                       [&](std::uint32_t t) { return pos[t] - xs < lo; });
            } else {
                right_ptr_[k] = std::max(
                    seek_1d(target_layer, xs + lo, [&](std::uint32_t t) { return pos[t] - xs < lo; }),
                    right_ptr_[0]);
                left_ptr_[k] =
                    seek_1d(target_layer, xs - lo, [&](std::uint32_t t) { return !(xs - pos[t] < lo); });
            }
        }

        auto consider = [&](const Shell& shell, std::uint32_t t, double dist) {
            const double q = rule_.prob(rule_.kernel(ws, marks_[t]), dist);
            double accept = q;
            if (shell.p_bar < 1.0) {
                if (q > shell.p_bar) throw std::logic_error("sweep domination violated: p(u,v) exceeds p_bar");
                accept = q / shell.p_bar;
            }
            if (accept >= 1.0 || (accept > 0.0 && uniform01(rng_) < accept)) {
                out_->push_back(Edge::make(ids_[s], ids_[t]));
            }
        };
        for (std::size_t k = 0; k < num_shells; ++k) {
            Shell& shell = shells_[k];
            if (!(shell.p_bar > 0.0)) break;
            const std::uint32_t rb = right_ptr_[k];
            const std::uint32_t re = std::max(rb, right_ptr_[k + 1]);
            const std::uint32_t lb = self ? 0 : (k + 1 < num_shells ? left_ptr_[k + 1] : t0);
            const std::uint32_t le = self ? 0 : std::max(lb, left_ptr_[k]);
            if (shell.p_bar >= 1.0) {
                for (std::uint32_t t = rb; t < re; ++t) consider(shell, t, pos[t] - xs);
                for (std::uint32_t t = lb; t < le; ++t) consider(shell, t, xs - pos[t]);
                continue;
            }
            auto skip_through = [&](double& skip, std::uint32_t begin, std::uint32_t end, bool right) {
                const auto len = static_cast<double>(end - begin);
                while (skip < len) {
                    ++far_candidates_;
                    const std::uint32_t t = begin + static_cast<std::uint32_t>(skip);
                    consider(shell, t, right ? pos[t] - xs : xs - pos[t]);
                    skip += 1.0 + std::floor(std::log(uniform01_open_low(rng_)) / shell.log_q);
                }
                skip -= len;
            };
            skip_through(shell.skip_right, rb, re, true);
            if (!self) skip_through(shell.skip_left, lb, le, false);
        }
    }
}

void CellGridSampler::sample(const VertexSet& vertices, std::uint64_t seed, std::vector<Edge>& out) {
    if (vertices.dim() != dim_) throw Error(ErrorCode::RejectInconsistent, "vertex and model dimension differ");
    far_candidates_ = 0;
    rng_.seed(seed);
    if (vertices.size() < 2) return;
    if (vertices.size() > std::numeric_limits<std::uint32_t>::max() / 2) {
        throw Error(ErrorCode::Capacity, "too many vertices for 32-bit ids");
    }
    out_ = &out;
    if (dim_ == 1) {
        build_index_1d(vertices);
        sample_1d();
        out_ = nullptr;
        return;
    }
    build_index(vertices);

    const auto num_layers = static_cast<std::uint32_t>(layer_max_mark_.size());
    const double log2_volume = dim_ * std::log2(cube_side_);
    const Cell root{};
    for (std::uint32_t i = 0; i < num_layers; ++i) {
        const std::uint32_t a0 = layer_begin_[i], a1 = layer_begin_[i + 1];
        if (a0 == a1) continue;
        for (std::uint32_t j = i; j < num_layers; ++j) {
            const std::uint32_t b0 = layer_begin_[j], b1 = layer_begin_[j + 1];
            if (b0 == b1) continue;
            LayerPairContext ctx;
            ctx.kappa_max = rule_.kernel(layer_max_mark_[i], layer_max_mark_[j]);
            // Deepest level whose cell volume is still >= beta * kappa_max.
            const double reach = std::log2(rule_.beta() * ctx.kappa_max);
            const double level = std::floor((log2_volume - reach) / dim_);
            ctx.target_level = static_cast<int>(std::clamp(level, 0.0, static_cast<double>(max_level_)));
            visit(ctx, 0, root.data(), root.data(), a0, a1, b0, b1, i == j);
        }
    }
    out_ = nullptr;
}

std::uint32_t CellGridSampler::child_end(std::uint32_t begin, std::uint32_t end, int level, std::uint64_t child) const {
    const int shift = dim_ * (max_level_ - level - 1);
    const std::uint64_t mask = (std::uint64_t{1} << dim_) - 1;
    const auto* first = codes_.data() + begin;
    const auto* last = codes_.data() + end;
    const auto* it = std::partition_point(first, last, [&](std::uint64_t code) { return ((code >> shift) & mask) <= child; });
    return static_cast<std::uint32_t>(it - codes_.data());
}

void CellGridSampler::visit(const LayerPairContext& ctx, int level, const std::uint64_t* cell_a,
                            const std::uint64_t* cell_b, std::uint32_t a0, std::uint32_t a1, std::uint32_t b0,
                            std::uint32_t b1, bool same) {
    if (a0 == a1 || b0 == b1) return;
    if (same && a1 - a0 < 2) return;
    if (level >= ctx.target_level) {
        near_pairs(ctx, a0, a1, b0, b1, same);
        return;
    }

    struct Child {
        std::uint32_t index;
        std::uint32_t begin;
        std::uint32_t end;
    };
    const std::uint64_t num_children = std::uint64_t{1} << dim_;
    auto split = [&](std::uint32_t begin, std::uint32_t end, std::array<Child, 256>& kids) {
        std::size_t count = 0;
        std::uint32_t pos = begin;
        for (std::uint64_t c = 0; c < num_children && pos < end; ++c) {
            const std::uint32_t stop = child_end(pos, end, level, c);
            if (stop > pos) kids[count++] = {static_cast<std::uint32_t>(c), pos, stop};
            pos = stop;
        }
        return count;
    };
    auto child_cell = [&](const std::uint64_t* parent, std::uint32_t c, Cell& cell) {
        for (int k = 0; k < dim_; ++k) cell[k] = 2 * parent[k] + ((c >> k) & 1U);
    };

    Cell ca{}, cb{};
    std::array<Child, 256> kids_a;
    const std::size_t na = split(a0, a1, kids_a);
    if (same) {
        for (std::size_t x = 0; x < na; ++x) {
            child_cell(cell_a, kids_a[x].index, ca);
            visit(ctx, level + 1, ca.data(), ca.data(), kids_a[x].begin, kids_a[x].end, kids_a[x].begin,
                  kids_a[x].end, true);
            for (std::size_t y = x + 1; y < na; ++y) {
                child_cell(cell_a, kids_a[y].index, cb);
                visit(ctx, level + 1, ca.data(), cb.data(), kids_a[x].begin, kids_a[x].end, kids_a[y].begin,
                      kids_a[y].end, false);
            }
        }
        return;
    }

    std::array<Child, 256> kids_b;
    const std::size_t nb = split(b0, b1, kids_b);
    for (std::size_t x = 0; x < na; ++x) {
        child_cell(cell_a, kids_a[x].index, ca);
        for (std::size_t y = 0; y < nb; ++y) {
            child_cell(cell_b, kids_b[y].index, cb);
            bool adjacent = true;
            for (int k = 0; k < dim_; ++k) {
                if ((ca[k] > cb[k] ? ca[k] - cb[k] : cb[k] - ca[k]) > 1) {
                    adjacent = false;
                    break;
                }
            }
            if (adjacent) {
                visit(ctx, level + 1, ca.data(), cb.data(), kids_a[x].begin, kids_a[x].end, kids_b[y].begin,
                      kids_b[y].end, false);
            } else {
                far_pairs(ctx, level + 1, ca.data(), cb.data(), kids_a[x].begin, kids_a[x].end, kids_b[y].begin,
                          kids_b[y].end);
            }
        }
    }
}

void CellGridSampler::near_pairs(const LayerPairContext&, std::uint32_t a0, std::uint32_t a1, std::uint32_t b0,
                                 std::uint32_t b1, bool same) {
    const int d = dim_;
    for (std::uint32_t x = a0; x < a1; ++x) {
        const double* px = coords_.data() + static_cast<std::size_t>(x) * d;
        const double wx = marks_[x];
        for (std::uint32_t y = same ? x + 1 : b0; y < b1; ++y) {
            const double q = rule_.prob(rule_.kernel(wx, marks_[y]), dist_pow(px, coords_.data() + static_cast<std::size_t>(y) * d, d));
            if (q >= 1.0 || (q > 0.0 && uniform01(rng_) < q)) out_->push_back(Edge::make(ids_[x], ids_[y]));
        }
    }
}

void CellGridSampler::far_pairs(const LayerPairContext& ctx, int level, const std::uint64_t* cell_a,
                                const std::uint64_t* cell_b, std::uint32_t a0, std::uint32_t a1, std::uint32_t b0,
                                std::uint32_t b1) {
    const int d = dim_;
    const double side = std::ldexp(cube_side_, -level);
    double sq = 0.0;
    for (int k = 0; k < d; ++k) {
        const std::uint64_t diff = cell_a[k] > cell_b[k] ? cell_a[k] - cell_b[k] : cell_b[k] - cell_a[k];
        if (diff > 1) {
            const double gap = static_cast<double>(diff - 1) * side;
            sq += gap * gap;
        }
    }
    double min_dist_d = d == 1 ? std::sqrt(sq) : (d == 2 ? sq : std::pow(std::sqrt(sq), d));
    min_dist_d *= 1.0 - kDistanceSlack;
    const double p_bar = rule_.prob(ctx.kappa_max, min_dist_d);
    if (!(p_bar > 0.0)) return;

    const std::uint64_t nb = b1 - b0;
    const std::uint64_t total = static_cast<std::uint64_t>(a1 - a0) * nb;
    auto consider = [&](std::uint64_t index) {
        const auto x = static_cast<std::uint32_t>(a0 + index / nb);
        const auto y = static_cast<std::uint32_t>(b0 + index % nb);
        const double q = rule_.prob(rule_.kernel(marks_[x], marks_[y]),
                                    dist_pow(coords_.data() + static_cast<std::size_t>(x) * d,
                                             coords_.data() + static_cast<std::size_t>(y) * d, d));
        if (q > p_bar) throw std::logic_error("cell-grid domination violated: p(u,v) exceeds p_bar");
        const double ratio = q / p_bar;
        if (ratio >= 1.0 || (ratio > 0.0 && uniform01(rng_) < ratio)) out_->push_back(Edge::make(ids_[x], ids_[y]));
    };

    if (p_bar >= 1.0) {
        far_candidates_ += total;
        for (std::uint64_t index = 0; index < total; ++index) consider(index);
        return;
    }
    const double log_q = std::log1p(-p_bar);
    const auto total_d = static_cast<double>(total);
    double index = std::floor(std::log(uniform01_open_low(rng_)) / log_q);
    while (index < total_d) {
        ++far_candidates_;
        consider(static_cast<std::uint64_t>(index));
        index += 1.0 + std::floor(std::log(uniform01_open_low(rng_)) / log_q);
    }
}

}  // namespace ksrg
