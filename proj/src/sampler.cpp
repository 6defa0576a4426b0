// Near-linear exact edge sampling for GIRGs.
//
// Vertices are bucketed into weight layers [wmin 2^i, wmin 2^(i+1)) and indexed
// in a hierarchy of grids with 2^l cells per axis (Morton order, so a coarse
// cell is a contiguous range of finer cells). For a pair of layers (i, j) let T
// be the finest level whose cell side still covers the distance at which the
// two layers are certain (or, in the threshold regime, able) to connect. Every
// pair of points falls into exactly one of:
//   * touching cells at level T            -> every pair is tested directly;
//   * cells A, B at a level l in [1, T]    -> A and B do not touch but their
//     parents do; all pairs are at distance >= the cell gap, so the edge
//     probability is dominated by a constant bound and pairs are visited by
//     geometric skipping followed by rejection.
// In the threshold regime the second class never produces an edge and is
// skipped. Each layer pair draws from its own substream.

#include <girgnav/model.hpp>

#include <girgnav/error.hpp>

#include <algorithm>
#include <array>
#include <cmath>

namespace girgnav {
namespace {

constexpr int kMaxCodeBits = 26;

class CellCode {
public:
    explicit CellCode(int d) : d_(d) {}

    std::uint64_t encode(const std::uint32_t* c, int level) const {
        std::uint64_t code = 0;
        for (int b = 0; b < level; ++b) {
            for (int k = 0; k < d_; ++k) {
                code |= static_cast<std::uint64_t>((c[k] >> b) & 1U) << (b * d_ + k);
            }
        }
        return code;
    }

    void decode(std::uint64_t code, int level, std::uint32_t* c) const {
        for (int k = 0; k < d_; ++k) c[k] = 0;
        for (int b = 0; b < level; ++b) {
            for (int k = 0; k < d_; ++k) {
                c[k] |= static_cast<std::uint32_t>((code >> (b * d_ + k)) & 1U) << b;
            }
        }
    }

    int d() const { return d_; }

private:
    int d_;
};

struct Layer {
    int level = 0;
    std::vector<VertexId> ids;
    std::vector<std::uint64_t> cells;
    std::vector<std::uint32_t> offsets;

    std::pair<std::uint32_t, std::uint32_t> range(std::uint64_t code, int at_level, int d) const {
        const int shift = d * (level - at_level);
        return {offsets[code << shift], offsets[(code + 1) << shift]};
    }
};

class EdgeSampler {
public:
    EdgeSampler(const ModelParams& params, std::span<const double> weights,
                std::span<const double> coords, std::uint64_t seed)
        : params_(params), weights_(weights), coords_(coords), seed_(seed), code_(params.d) {}

    std::vector<std::pair<VertexId, VertexId>> run() {
        const std::size_t nv = weights_.size();
        if (nv < 2) return {};
        const int d = params_.d;
        if (params_.n >= 2.0) {
            max_level_ = static_cast<int>(std::floor(std::log2(params_.n) / d));
        }
        max_level_ = std::clamp(max_level_, 0, kMaxCodeBits / d);

        std::vector<int> layer_of(nv);
        int num_layers = 0;
        for (std::size_t v = 0; v < nv; ++v) {
            layer_of[v] = layer_index(weights_[v]);
            num_layers = std::max(num_layers, layer_of[v] + 1);
        }
        build_layers(layer_of, num_layers);

        for (int i = 0; i < num_layers; ++i) {
            if (layers_[i].ids.empty()) continue;
            for (int j = i; j < num_layers; ++j) {
                if (layers_[j].ids.empty()) continue;
                Rng rng(derive_seed(seed_, {static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)}));
                sample_layer_pair(i, j, rng);
            }
        }
        return std::move(edges_);
    }

private:
    double layer_upper(int i) const { return params_.w_min * std::ldexp(1.0, i + 1); }

    int layer_index(double w) const {
        int i = static_cast<int>(std::floor(std::log2(w / params_.w_min)));
        i = std::clamp(i, 0, 1000);
        while (w >= layer_upper(i)) ++i;
        while (i > 0 && w < params_.w_min * std::ldexp(1.0, i)) --i;
        return i;
    }

    int target_level(int i, int j) const {
        const double factor = params_.threshold() ? params_.c1 : std::max(params_.c1, 1.0);
        const double reach = factor * layer_upper(i) * layer_upper(j) /
                             (params_.w_min * params_.n);
        if (!(reach < 1.0)) return 0;
        const int d = params_.d;
        int l = static_cast<int>(std::floor(-std::log2(reach) / d));
        l = std::clamp(l, 0, max_level_);
        while (l > 0 && std::ldexp(1.0, -l * d) < reach) --l;
        while (l < max_level_ && std::ldexp(1.0, -(l + 1) * d) >= reach) ++l;
        return l;
    }

    void build_layers(const std::vector<int>& layer_of, int num_layers) {
        const int d = params_.d;
        layers_.assign(static_cast<std::size_t>(num_layers), Layer{});
        std::vector<std::uint32_t> cell(static_cast<std::size_t>(d));
        for (int i = 0; i < num_layers; ++i) layers_[i].level = target_level(i, 0);
        for (std::size_t v = 0; v < layer_of.size(); ++v) layers_[layer_of[v]].ids.push_back(static_cast<VertexId>(v));
        for (auto& layer : layers_) {
            const std::size_t num_cells = std::size_t{1} << (d * layer.level);
            const double scale = std::ldexp(1.0, layer.level);
            std::vector<std::uint64_t> codes(layer.ids.size());
            for (std::size_t k = 0; k < layer.ids.size(); ++k) {
                auto pos = coords_.subspan(static_cast<std::size_t>(layer.ids[k]) * d, d);
                for (int a = 0; a < d; ++a) {
                    auto c = static_cast<std::uint32_t>(pos[a] * scale);
                    cell[a] = std::min(c, static_cast<std::uint32_t>(scale) - 1);
                }
                codes[k] = code_.encode(cell.data(), layer.level);
            }
            // Counting sort by cell; stable so ids stay ascending inside a cell.
            layer.offsets.assign(num_cells + 1, 0);
            for (auto c : codes) ++layer.offsets[c + 1];
            for (std::size_t c = 0; c < num_cells; ++c) layer.offsets[c + 1] += layer.offsets[c];
            std::vector<std::uint32_t> fill(layer.offsets.begin(), layer.offsets.end() - 1);
            std::vector<VertexId> sorted_ids(layer.ids.size());
            layer.cells.resize(layer.ids.size());
            for (std::size_t k = 0; k < layer.ids.size(); ++k) {
                const auto slot = fill[codes[k]]++;
                sorted_ids[slot] = layer.ids[k];
                layer.cells[slot] = codes[k];
            }
            layer.ids = std::move(sorted_ids);
        }
    }

    // Cells at `level` touching `code` (Chebyshev distance <= 1 with wrap), sorted, unique.
    std::vector<std::uint64_t> touching(std::uint64_t code, int level) const {
        const int d = params_.d;
        if (level == 0) return {0};
        const std::uint32_t k = 1U << level;
        std::array<std::uint32_t, 32> base{};
        code_.decode(code, level, base.data());
        std::vector<std::uint64_t> out;
        std::array<std::uint32_t, 32> c{};
        std::array<int, 32> off{};
        off.fill(-1);
        while (true) {
            for (int a = 0; a < d; ++a) c[a] = (base[a] + k + static_cast<std::uint32_t>(off[a])) % k;
            out.push_back(code_.encode(c.data(), level));
            int a = 0;
            while (a < d && ++off[a] == 2) off[a++] = -1;
            if (a == d) break;
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    // Per-axis cyclic cell distances between two cells at the same level.
    std::uint32_t axis_gap_max(std::uint64_t a, std::uint64_t b, int level) const {
        std::array<std::uint32_t, 32> ca{};
        std::array<std::uint32_t, 32> cb{};
        code_.decode(a, level, ca.data());
        code_.decode(b, level, cb.data());
        const std::uint32_t k = 1U << level;
        std::uint32_t gap = 0;
        for (int x = 0; x < params_.d; ++x) {
            const std::uint32_t diff = ca[x] > cb[x] ? ca[x] - cb[x] : cb[x] - ca[x];
            gap = std::max(gap, std::min(diff, k - diff));
        }
        return gap;
    }

    double distance(VertexId u, VertexId v) const {
        const auto d = static_cast<std::size_t>(params_.d);
        return torus_distance(coords_.subspan(u * d, d), coords_.subspan(v * d, d));
    }

    void test_pair(VertexId u, VertexId v, Rng& rng) {
        const double p = edge_probability(params_, weights_[u], weights_[v], distance(u, v));
        if (p >= 1.0 || (p > 0.0 && rng.uniform() < p)) emit(u, v);
    }

    void emit(VertexId u, VertexId v) {
        if (u > v) std::swap(u, v);
        edges_.emplace_back(u, v);
    }

    template <typename Visit>
    static void for_each_cell(const Layer& layer, int at_level, int d, Visit&& visit) {
        const int shift = d * (layer.level - at_level);
        std::size_t idx = 0;
        while (idx < layer.ids.size()) {
            const std::uint64_t code = layer.cells[idx] >> shift;
            std::size_t end = idx + 1;
            while (end < layer.ids.size() && (layer.cells[end] >> shift) == code) ++end;
            visit(code, static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(end));
            idx = end;
        }
    }

    void all_pairs(const Layer& a, std::pair<std::uint32_t, std::uint32_t> ra, const Layer& b,
                   std::pair<std::uint32_t, std::uint32_t> rb, Rng& rng) {
        for (auto x = ra.first; x < ra.second; ++x) {
            for (auto y = rb.first; y < rb.second; ++y) test_pair(a.ids[x], b.ids[y], rng);
        }
    }

    void skip_pairs(const Layer& a, std::pair<std::uint32_t, std::uint32_t> ra, const Layer& b,
                    std::pair<std::uint32_t, std::uint32_t> rb, double bound, Rng& rng) {
        if (bound >= 1.0) {
            all_pairs(a, ra, b, rb, rng);
            return;
        }
        const std::uint64_t nb = rb.second - rb.first;
        const std::uint64_t total = static_cast<std::uint64_t>(ra.second - ra.first) * nb;
        std::uint64_t idx = rng.geometric_skip(bound);
        while (idx < total) {
            const VertexId u = a.ids[ra.first + idx / nb];
            const VertexId v = b.ids[rb.first + idx % nb];
            const double p = edge_probability(params_, weights_[u], weights_[v], distance(u, v));
            if (rng.uniform() * bound < p) emit(u, v);
            const std::uint64_t skip = rng.geometric_skip(bound);
            if (skip >= total) break;
            idx += 1 + skip;
        }
    }

    void sample_layer_pair(int i, int j, Rng& rng) {
        const int d = params_.d;
        const int top = target_level(i, j);
        const Layer& li = layers_[i];
        const Layer& lj = layers_[j];

        // Touching cells at the target level: test every pair.
        if (i == j) {
            for_each_cell(li, top, d, [&](std::uint64_t code, std::uint32_t b, std::uint32_t e) {
                for (auto x = b; x < e; ++x) {
                    for (auto y = x + 1; y < e; ++y) test_pair(li.ids[x], li.ids[y], rng);
                }
                for (auto other : touching(code, top)) {
                    if (other <= code) continue;
                    all_pairs(li, {b, e}, li, li.range(other, top, d), rng);
                }
            });
        } else {
            const bool i_outer = li.ids.size() <= lj.ids.size();
            const Layer& outer = i_outer ? li : lj;
            const Layer& inner = i_outer ? lj : li;
            for_each_cell(outer, top, d, [&](std::uint64_t code, std::uint32_t b, std::uint32_t e) {
                for (auto other : touching(code, top)) {
                    all_pairs(outer, {b, e}, inner, inner.range(other, top, d), rng);
                }
            });
        }

        if (params_.threshold()) return;

        // Non-touching cells with touching parents, levels 1..top.
        const bool i_outer = li.ids.size() <= lj.ids.size();
        const Layer& outer = i_outer ? li : lj;
        const Layer& inner = i_outer ? lj : li;
        for (int level = 1; level <= top; ++level) {
            const double cell_side = std::ldexp(1.0, -level);
            for_each_cell(outer, level, d, [&](std::uint64_t code, std::uint32_t b, std::uint32_t e) {
                for (auto parent : touching(code >> d, level - 1)) {
                    for (std::uint64_t child = 0; child < (std::uint64_t{1} << d); ++child) {
                        const std::uint64_t other = (parent << d) | child;
                        if (i == j && other <= code) continue;
                        const std::uint32_t gap = axis_gap_max(code, other, level);
                        if (gap <= 1) continue;
                        const auto rb = inner.range(other, level, d);
                        if (rb.first == rb.second) continue;
                        const double min_dist = (gap - 1) * cell_side * (1.0 - 1e-12);
                        const double bound = edge_probability(params_, layer_upper(i), layer_upper(j), min_dist);
                        if (bound <= 0.0) continue;
                        skip_pairs(outer, {b, e}, inner, rb, bound, rng);
                    }
                }
            });
        }
    }

    const ModelParams& params_;
    std::span<const double> weights_;
    std::span<const double> coords_;
    std::uint64_t seed_;
    CellCode code_;
    int max_level_ = 0;
    std::vector<Layer> layers_;
    std::vector<std::pair<VertexId, VertexId>> edges_;
};

} // namespace

std::vector<std::pair<VertexId, VertexId>> sample_edges(const ModelParams& params,
                                                         std::span<const double> weights,
                                                         std::span<const double> coords,
                                                         std::uint64_t edge_seed) {
    params.validate();
    if (coords.size() != weights.size() * static_cast<std::size_t>(params.d)) {
        throw InvalidInput("sample_edges: coordinate array does not match weights");
    }
    if (params.d > kMaxCodeBits) throw InvalidInput("sample_edges: dimension too large");
    return EdgeSampler(params, weights, coords, edge_seed).run();
}

} // namespace girgnav
