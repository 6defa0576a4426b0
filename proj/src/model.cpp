#include <girgnav/model.hpp>

#include <girgnav/error.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace girgnav {

void ModelParams::validate() const {
    if (!(n >= 0.0) || !std::isfinite(n)) throw InvalidInput("n must be a finite non-negative real");
    if (d < 1) throw InvalidInput("d must be a positive integer");
    if (!(beta > 2.0 && beta < 3.0)) throw InvalidInput("beta must lie in (2, 3)");
    if (!(w_min > 0.0) || !std::isfinite(w_min)) throw InvalidInput("wmin must be positive");
    if (!(alpha > 1.0)) throw InvalidInput("alpha must exceed 1 (or be inf)");
    if (!threshold() && !(kernel_c > 0.0)) throw InvalidInput("kernel_c must be positive");
    if (!(c1 > 0.0)) throw InvalidInput("c1 must be positive");
    if (!(c2 >= c1)) throw InvalidInput("c2 must be at least c1");
}

Graph::Graph(ModelParams params, std::vector<double> weights, std::vector<double> coords,
             std::vector<std::pair<VertexId, VertexId>> edges)
    : params_(params), weights_(std::move(weights)), coords_(std::move(coords)) {
    const std::size_t nv = weights_.size();
    if (coords_.size() != nv * static_cast<std::size_t>(params_.d)) {
        throw InvalidInput("graph: coordinate array does not match vertex count and dimension");
    }
    std::vector<std::size_t> degree(nv, 0);
    for (auto& [u, v] : edges) {
        if (u >= nv || v >= nv) throw InvalidInput("graph: edge endpoint out of range");
        if (u == v) throw InvalidInput("graph: self-loop");
        ++degree[u];
        ++degree[v];
    }
    offsets_.assign(nv + 1, 0);
    for (std::size_t v = 0; v < nv; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
    neighbors_.resize(offsets_[nv]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (auto& [u, v] : edges) {
        neighbors_[fill[u]++] = v;
        neighbors_[fill[v]++] = u;
    }
    for (std::size_t v = 0; v < nv; ++v) {
        auto first = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
        auto last = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
        std::sort(first, last);
        if (std::adjacent_find(first, last) != last) throw InvalidInput("graph: duplicate edge");
    }
}

Graph Graph::from_vertices(ModelParams params, std::span<const Vertex> vertices,
                           std::vector<std::pair<VertexId, VertexId>> edges) {
    std::vector<double> weights;
    std::vector<double> coords;
    weights.reserve(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const Vertex& v = vertices[i];
        if (v.id != i) throw InvalidInput("graph: vertex ids must be 0..n-1 in order");
        if (v.pos.dimension() != params.d) throw InvalidInput("graph: vertex dimension mismatch");
        weights.push_back(v.weight);
        coords.insert(coords.end(), v.pos.coords().begin(), v.pos.coords().end());
    }
    return Graph(params, std::move(weights), std::move(coords), std::move(edges));
}

Vertex Graph::vertex(VertexId v) const {
    check_vertex(v);
    auto p = position(v);
    return Vertex{v, TorusPoint(std::vector<double>(p.begin(), p.end())), weights_[v]};
}

bool Graph::has_edge(VertexId u, VertexId v) const {
    auto adj = neighbors(u);
    return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<std::pair<VertexId, VertexId>> Graph::edge_list() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(num_edges());
    for (VertexId u = 0; u < num_vertices(); ++u) {
        for (VertexId v : neighbors(u)) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

void Graph::check_vertex(VertexId v) const {
    if (v >= num_vertices()) {
        throw InvalidInput("vertex id " + std::to_string(v) + " out of range (graph has " +
                           std::to_string(num_vertices()) + " vertices)");
    }
}

double sample_weight(const ModelParams& params, double uniform) {
    if (!(uniform > 0.0 && uniform <= 1.0)) throw InvalidInput("sample_weight: uniform must lie in (0, 1]");
    if (!(params.beta > 1.0)) throw InvalidInput("sample_weight: beta must exceed 1");
    if (!(params.w_min > 0.0)) throw InvalidInput("sample_weight: wmin must be positive");
    return params.w_min * std::pow(uniform, -1.0 / (params.beta - 1.0));
}

namespace {

// Flat-array form of the point process shared by sample_vertices and sample_graph.
void sample_point_process(const ModelParams& params, std::vector<double>& weights,
                          std::vector<double>& coords) {
    Rng count_rng(derive_seed(params.seed, {stream::count}));
    const std::uint64_t count = count_rng.poisson(params.n);
    if (count > std::numeric_limits<VertexId>::max() / 2) throw InvalidInput("n too large");

    Rng pos_rng(derive_seed(params.seed, {stream::positions}));
    Rng weight_rng(derive_seed(params.seed, {stream::weights}));
    weights.resize(count);
    coords.resize(count * static_cast<std::size_t>(params.d));
    for (auto& c : coords) c = pos_rng.uniform();
    for (auto& w : weights) w = sample_weight(params, weight_rng.uniform_open_closed());
}

} // namespace

std::vector<Vertex> sample_vertices(const ModelParams& params) {
    params.validate();
    std::vector<double> weights;
    std::vector<double> coords;
    sample_point_process(params, weights, coords);
    const auto d = static_cast<std::size_t>(params.d);
    std::vector<Vertex> out;
    out.reserve(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        out.push_back(Vertex{static_cast<VertexId>(i),
                             TorusPoint(std::vector<double>(coords.begin() + static_cast<std::ptrdiff_t>(i * d),
                                                            coords.begin() + static_cast<std::ptrdiff_t>((i + 1) * d))),
                             weights[i]});
    }
    return out;
}

double edge_probability(const ModelParams& params, double w_u, double w_v, double distance) {
    const double scale = w_u * w_v / (params.w_min * params.n);
    const double dist_d = std::pow(distance, params.d);
    if (params.ep3 && dist_d <= params.c1 * scale) return 1.0;
    if (params.threshold()) return dist_d <= params.c1 * scale ? 1.0 : 0.0;
    if (dist_d == 0.0) return 1.0;
    const double q = scale / dist_d;
    return std::min(1.0, params.kernel_c * std::pow(q, params.alpha));
}

double edge_probability(const ModelParams& params, const Vertex& u, const Vertex& v) {
    if (u.id == v.id) throw InvalidInput("edge_probability: u and v must be distinct");
    return edge_probability(params, u.weight, v.weight, torus_distance(u.pos, v.pos));
}

Graph sample_graph(const ModelParams& params, std::span<const Vertex> injected) {
    params.validate();
    std::vector<double> weights;
    std::vector<double> coords;
    sample_point_process(params, weights, coords);
    for (const Vertex& v : injected) {
        if (v.pos.dimension() != params.d) throw InvalidInput("injected vertex has wrong dimension");
        if (!(v.weight >= params.w_min)) throw InvalidInput("injected vertex weight below wmin");
        weights.push_back(v.weight);
        coords.insert(coords.end(), v.pos.coords().begin(), v.pos.coords().end());
    }
    auto edges = sample_edges(params, weights, coords, derive_seed(params.seed, {stream::edges}));
    return Graph(params, std::move(weights), std::move(coords), std::move(edges));
}

MarginalEstimate marginal_edge_probability_estimate(const ModelParams& params, double w_u,
                                                    double w_v, std::uint64_t trials) {
    if (trials < 1) throw InvalidInput("marginal estimate needs at least one trial");
    Rng rng(derive_seed(params.seed, {stream::positions, 0x6d617267ULL}));
    std::vector<double> x(static_cast<std::size_t>(params.d));
    std::vector<double> y(static_cast<std::size_t>(params.d));
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        for (auto& c : x) c = rng.uniform();
        for (auto& c : y) c = rng.uniform();
        const double p = edge_probability(params, w_u, w_v, torus_distance(x, y));
        sum += p;
        sum_sq += p * p;
    }
    const double t = static_cast<double>(trials);
    const double mean = sum / t;
    const double var = trials > 1 ? std::max(0.0, (sum_sq - t * mean * mean) / (t - 1.0)) : 0.0;
    return {mean, std::sqrt(var / t)};
}

} // namespace girgnav
