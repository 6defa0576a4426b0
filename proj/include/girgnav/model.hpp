#pragma once

#include <girgnav/geometry.hpp>
#include <girgnav/rng.hpp>

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace girgnav {

using VertexId = std::uint32_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Free parameters of a geometric inhomogeneous random graph.
///
/// alpha == kInfinity selects the threshold regime; kernel_c is then unused.
/// c2 is carried for documentation and validation only: the band between the
/// c1 and c2 thresholds is collapsed onto the c1 threshold.
struct ModelParams {
    double n = 1000.0;
    int d = 2;
    double beta = 2.5;
    double w_min = 1.0;
    double alpha = kInfinity;
    double kernel_c = 1.0;
    double c1 = 1.0;
    double c2 = 1.0;
    bool ep3 = false;
    std::uint64_t seed = 1;

    bool threshold() const { return alpha == kInfinity; }

    /// Throws InvalidInput naming the first offending field.
    void validate() const;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

struct Vertex {
    VertexId id = 0;
    TorusPoint pos;
    double weight = 1.0;
};

/// Immutable undirected simple graph with torus positions and weights.
/// Adjacency is stored in compressed form; each neighbor list is sorted.
class Graph {
public:
    Graph() = default;

    /// coords holds d consecutive values per vertex. Edges may be given in any
    /// order and orientation; self-loops and duplicates raise InvalidInput.
    Graph(ModelParams params, std::vector<double> weights, std::vector<double> coords,
          std::vector<std::pair<VertexId, VertexId>> edges);

    /// Convenience constructor for hand-built instances.
    static Graph from_vertices(ModelParams params, std::span<const Vertex> vertices,
                               std::vector<std::pair<VertexId, VertexId>> edges);

    const ModelParams& params() const { return params_; }
    int dimension() const { return params_.d; }
    std::size_t num_vertices() const { return weights_.size(); }
    std::size_t num_edges() const { return neighbors_.size() / 2; }

    double weight(VertexId v) const { return weights_[v]; }
    std::span<const double> position(VertexId v) const {
        return {coords_.data() + static_cast<std::size_t>(v) * static_cast<std::size_t>(params_.d),
                static_cast<std::size_t>(params_.d)};
    }
    Vertex vertex(VertexId v) const;

    std::span<const VertexId> neighbors(VertexId v) const {
        return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
    }
    std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
    bool has_edge(VertexId u, VertexId v) const;

    /// All edges as (u, v) with u < v, ordered lexicographically.
    std::vector<std::pair<VertexId, VertexId>> edge_list() const;

    std::span<const double> weights() const { return weights_; }
    std::span<const double> coords() const { return coords_; }

    /// Throws InvalidInput if v is not a vertex of this graph.
    void check_vertex(VertexId v) const;

private:
    ModelParams params_;
    std::vector<double> weights_;
    std::vector<double> coords_;
    std::vector<std::size_t> offsets_{0};
    std::vector<VertexId> neighbors_;
};

/// Inverse-CDF power-law weight: w_min * uniform^(-1/(beta-1)), uniform in (0, 1].
double sample_weight(const ModelParams& params, double uniform);

/// Poisson point process of intensity n on the torus with i.i.d. power-law weights.
/// Draws from the count, positions and weights substreams of params.seed.
std::vector<Vertex> sample_vertices(const ModelParams& params);

/// Edge probability as a function of the two weights and their torus distance.
double edge_probability(const ModelParams& params, double w_u, double w_v, double distance);

/// Edge probability between two distinct vertices. Throws InvalidInput if u.id == v.id.
double edge_probability(const ModelParams& params, const Vertex& u, const Vertex& v);

/// Samples every unordered pair independently with its edge probability.
/// Expected running time is near-linear in vertices plus edges.
std::vector<std::pair<VertexId, VertexId>> sample_edges(const ModelParams& params,
                                                         std::span<const double> weights,
                                                         std::span<const double> coords,
                                                         std::uint64_t edge_seed);

/// Samples a full GIRG. Vertices in `injected` are appended after the Poisson
/// vertices (their ids are reassigned) and take part in edge sampling like
/// every other vertex.
Graph sample_graph(const ModelParams& params, std::span<const Vertex> injected = {});

struct MarginalEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

/// Monte-Carlo estimate of the edge probability between two vertices of fixed
/// weights at independent uniform positions. Throws InvalidInput if trials < 1.
MarginalEstimate marginal_edge_probability_estimate(const ModelParams& params, double w_u,
                                                    double w_v, std::uint64_t trials);

} // namespace girgnav
