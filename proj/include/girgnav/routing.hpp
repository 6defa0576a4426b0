#pragma once

#include <girgnav/hyperbolic.hpp>
#include <girgnav/model.hpp>
#include <girgnav/objective.hpp>

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace girgnav {

enum class RouteStatus { Delivered, DeadEnd, StepLimit };

std::string_view to_string(RouteStatus status);

struct TraceEntry {
    VertexId vertex = 0;
    Score score;
    std::size_t inspected = 0;  ///< neighbors scored before leaving this vertex
};

struct RouteOutcome {
    std::vector<VertexId> path;
    RouteStatus status = RouteStatus::DeadEnd;
    std::size_t steps = 0;
    std::vector<TraceEntry> trace;  ///< one entry per path element
};

/// 10 * ceil(log2(n) + 1).
std::uint64_t default_step_limit(double n);

/// Moves to the best-ranked neighbor while it strictly improves the score.
/// Throws InvalidInput on invalid ids or step_limit == 0.
RouteOutcome greedy_route(const Graph& g, VertexId s, const Objective& obj, std::uint64_t step_limit);

/// Greedy routing that moves to the neighbor closest to t in hyperbolic
/// distance (smallest id on ties) while the distance strictly decreases.
/// Trace scores hold the negated distance, TOP at t.
RouteOutcome greedy_route_min_distance(const HyperbolicGraph& hg, VertexId s, VertexId t,
                                       std::uint64_t step_limit);

} // namespace girgnav
