#include <girgnav/routing.hpp>

#include <girgnav/error.hpp>

#include <cmath>

namespace girgnav {

std::string_view to_string(RouteStatus status) {
    switch (status) {
    case RouteStatus::Delivered: return "DELIVERED";
    case RouteStatus::DeadEnd: return "DEAD_END";
    case RouteStatus::StepLimit: return "STEP_LIMIT";
    }
    return "?";
}

std::uint64_t default_step_limit(double n) {
    return 10 * static_cast<std::uint64_t>(std::ceil(std::log2(std::max(n, 1.0)) + 1.0));
}

namespace {

template <class ScoreFn>
RouteOutcome run_greedy(const Graph& g, VertexId s, VertexId t, std::uint64_t step_limit, ScoreFn score) {
    g.check_vertex(s);
    g.check_vertex(t);
    if (step_limit == 0) throw InvalidInput("step_limit must be at least 1");

    RouteOutcome out;
    VertexId cur = s;
    Score cur_score = score(s);
    out.path.push_back(s);
    out.trace.push_back({s, cur_score, 0});
    while (true) {
        if (cur == t) {
            out.status = RouteStatus::Delivered;
            break;
        }
        const auto nbrs = g.neighbors(cur);
        out.trace.back().inspected = nbrs.size();
        bool found = false;
        VertexId best = 0;
        Score best_score;
        for (VertexId u : nbrs) {
            const Score su = score(u);
            if (!found || ranks_above(u, su, best, best_score)) {
                found = true;
                best = u;
                best_score = su;
            }
        }
        if (!found || !(best_score > cur_score)) {
            out.status = RouteStatus::DeadEnd;
            break;
        }
        if (out.steps >= step_limit) {
            out.status = RouteStatus::StepLimit;
            break;
        }
        cur = best;
        cur_score = best_score;
        ++out.steps;
        out.path.push_back(cur);
        out.trace.push_back({cur, cur_score, 0});
    }
    return out;
}

} // namespace

RouteOutcome greedy_route(const Graph& g, VertexId s, const Objective& obj, std::uint64_t step_limit) {
    g.check_vertex(obj.target());
    return run_greedy(g, s, obj.target(), step_limit, [&](VertexId v) { return obj.score(g, v); });
}

RouteOutcome greedy_route_min_distance(const HyperbolicGraph& hg, VertexId s, VertexId t,
                                       std::uint64_t step_limit) {
    hg.graph.check_vertex(t);
    return run_greedy(hg.graph, s, t, step_limit, [&](VertexId v) {
        if (v == t) return Score::top();
        return Score::of(-hyperbolic_distance(hg.points[v], hg.points[t]));
    });
}

} // namespace girgnav
