#pragma once

#include <girgnav/model.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace girgnav {

/// Parameters of a hyperbolic random graph on a disk of radius R = 2 ln n + c_h.
/// t_h == 0 selects the threshold model.
struct HyperbolicParams {
    std::uint64_t n = 1000;
    double alpha_h = 0.75;
    double c_h = 0.0;
    double t_h = 0.0;
    std::uint64_t seed = 1;

    double radius() const;
    /// Throws InvalidInput naming the first offending field.
    void validate() const;

    friend bool operator==(const HyperbolicParams&, const HyperbolicParams&) = default;
};

/// Polar coordinates on the hyperbolic disk: radius r in [0, R], angle nu in [0, 2 pi).
struct HyperbolicPoint {
    double r = 0.0;
    double nu = 0.0;
};

/// A hyperbolic random graph: the original polar coordinates plus the same
/// adjacency carried by a one-dimensional GIRG-coordinate Graph
/// (weight n e^{-r/2}, position nu / 2 pi).
struct HyperbolicGraph {
    HyperbolicParams params;
    std::vector<HyperbolicPoint> points;
    Graph graph;
};

/// Inverse-CDF radius sample for the density alpha sinh(alpha r) / (cosh(alpha R) - 1).
double sample_radius(const HyperbolicParams& params, double uniform);

/// Hyperbolic distance; the arcosh argument is clamped to at least 1.
double hyperbolic_distance(const HyperbolicPoint& x, const HyperbolicPoint& y);

/// Connection probability as a function of hyperbolic distance; with t_h == 0
/// this is the indicator d <= R.
double hyperbolic_edge_probability(const HyperbolicParams& params, double distance);

/// n points with i.i.d. radii and uniform angles.
std::vector<HyperbolicPoint> sample_hyperbolic_points(const HyperbolicParams& params);

/// Edges among the given points. Threshold graphs use angular windows per
/// radial band (near-linear); positive temperature tests all pairs.
std::vector<std::pair<VertexId, VertexId>> hyperbolic_edges(const HyperbolicParams& params,
                                                              std::span<const HyperbolicPoint> points);

/// Samples exactly n vertices (no Poisson count) and their edges.
HyperbolicGraph sample_hyperbolic_graph(const HyperbolicParams& params);

struct EmbeddedGirg {
    ModelParams params;
    std::vector<Vertex> vertices;
};

/// GIRG parameters induced by a hyperbolic model:
/// d = 1, beta = 2 alpha_h + 1, alpha = 1 / t_h (inf if t_h == 0), wmin = e^{-c_h / 2}.
/// Throws InvalidInput unless 1/2 < alpha_h < 1 and t_h < 1.
ModelParams embedded_params(const HyperbolicParams& params);

/// Maps every point to (w, x) = (n e^{-r/2}, nu / 2 pi).
EmbeddedGirg embed_to_girg(const HyperbolicParams& params, std::span<const HyperbolicPoint> points);

/// Inverse of the embedding for a single vertex.
HyperbolicPoint unembed(const HyperbolicParams& params, double weight, double position);

/// Builds a HyperbolicGraph (and its GIRG-coordinate view) from points and edges.
HyperbolicGraph make_hyperbolic_graph(const HyperbolicParams& params, std::vector<HyperbolicPoint> points,
                                      std::vector<std::pair<VertexId, VertexId>> edges);

/// Edge set of a threshold model computed purely from GIRG coordinates: the
/// predicate d_H(unembed(u), unembed(v)) <= R, with candidates enumerated by
/// position windows per weight layer. Independent of hyperbolic_edges.
std::vector<std::pair<VertexId, VertexId>> girg_coordinate_threshold_edges(const HyperbolicParams& params,
                                                                           const Graph& embedded);

/// n / (w_t wmin sqrt(cosh d_H(v, t))). Throws InvalidInput if v == t.
double phi_hyperbolic(const HyperbolicGraph& hg, VertexId v, VertexId t);

} // namespace girgnav
