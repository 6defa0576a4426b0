#pragma once

#include <girgnav/model.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace girgnav {

struct ComponentLabeling {
    std::vector<std::uint32_t> component_id;  ///< per vertex
    std::vector<std::size_t> component_sizes; ///< indexed by component id

    /// Id of the largest component (smallest id among equals). Requires a non-empty labeling.
    std::uint32_t largest() const;
    bool same(VertexId u, VertexId v) const { return component_id[u] == component_id[v]; }
};

/// Hop distance from s to t; nullopt when t is unreachable.
std::optional<std::uint32_t> bfs_distance(const Graph& g, VertexId s, VertexId t);

/// Hop distances from s to every vertex; nullopt where unreachable.
std::vector<std::optional<std::uint32_t>> bfs_distances(const Graph& g, VertexId s);

/// Component ids are assigned in order of the smallest contained vertex id.
ComponentLabeling connected_components(const Graph& g);

/// All v != t with phi(v) >= phi0, plus t, in increasing id order.
/// Throws InvalidInput unless phi0 > 0.
std::vector<VertexId> vertices_above_objective(const Graph& g, VertexId t, double phi0);

} // namespace girgnav
