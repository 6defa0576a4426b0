#include <girgnav/conformance.hpp>

#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace girgnav {

namespace {

CheckResult fail(std::size_t at, std::string message) { return {false, at, std::move(message)}; }

} // namespace

PatchOutcome to_patch_outcome(const RouteOutcome& route) {
    PatchOutcome out;
    out.path = route.path;
    out.steps = route.steps;
    out.status = route.status == RouteStatus::Delivered ? PatchStatus::Delivered
                 : route.status == RouteStatus::StepLimit ? PatchStatus::StepLimit
                                                          : PatchStatus::Exhausted;
    for (std::size_t i = 0; i < route.path.size(); ++i)
        out.event_log.push_back({i, PatchEventKind::Explore, route.path[i], Score::lowest()});
    out.distinct_visited = route.path.size();
    return out;
}

CheckResult check_p1(const PatchOutcome& outcome, const Graph& g, const Objective& obj) {
    ScoreCache score(g, obj);
    const VertexId t = obj.target();
    std::unordered_set<VertexId> seen;
    const auto& path = outcome.path;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const VertexId v = path[i], u = path[i + 1];
        const bool first = seen.insert(v).second;
        if (u == v) continue;
        if (!g.has_edge(v, u)) return fail(i + 1, "move along a non-edge");
        if (first && v != t) {
            bool any = false;
            VertexId best = 0;
            for (VertexId x : g.neighbors(v))
                if (!any || ranks_above(x, score(x), best, score(best))) any = true, best = x;
            if (any && score(best) > score(v) && u != best)
                return fail(i + 1, "first visit did not proceed to the best neighbor");
        }
        if (!seen.contains(u)) {
            for (VertexId x : g.neighbors(v))
                if (x != u && !seen.contains(x) && ranks_above(x, score(x), u, score(u)))
                    return fail(i + 1, "skipped a better unexplored neighbor");
        }
    }
    return {};
}

CheckResult check_p2(const PatchOutcome& outcome, double poly_exponent, double c) {
    std::unordered_set<VertexId> seen;
    const auto& path = outcome.path;
    std::size_t last_new = 0;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (seen.insert(path[i]).second) {
            if (i > 0) {
                const double k = static_cast<double>(seen.size() - 1);
                if (static_cast<double>(i - last_new) > c * std::pow(k, poly_exponent))
                    return fail(i, "gap between discoveries exceeds the bound");
            }
            last_new = i;
        }
    }
    if (outcome.status == PatchStatus::StepLimit) {
        const double k = static_cast<double>(seen.size());
        if (static_cast<double>(path.size() - 1 - last_new) > c * std::pow(k, poly_exponent))
            return fail(path.size() - 1, "no discovery before the step limit");
    }
    return {};
}

CheckResult check_p3(const PatchOutcome& outcome, const Graph& g, const Objective& obj, double poly_exponent,
                     double c) {
    const auto& path = outcome.path;
    if (path.empty()) return {};
    ScoreCache score(g, obj);
    const VertexId t = obj.target();

    std::unordered_map<VertexId, std::size_t> first_seen;
    for (std::size_t i = 0; i < path.size(); ++i) first_seen.try_emplace(path[i], i);

    std::optional<Score> best;
    for (std::size_t i = 0; i < path.size(); ++i) {
        const VertexId v = path[i];
        if (first_seen.at(v) != i) continue;
        const Score sv = score(v);
        if (best && !(sv > *best)) continue;
        best = sv;
        if (v == t) break;

        std::vector<VertexId> component{v};
        std::unordered_set<VertexId> in{v};
        for (std::size_t head = 0; head < component.size(); ++head)
            for (VertexId u : g.neighbors(component[head]))
                if (!in.contains(u) && score(u) >= sv) in.insert(u), component.push_back(u);

        const double budget = c * std::pow(static_cast<double>(component.size()), poly_exponent);
        std::size_t covered_at = i;
        bool covered = true;
        for (VertexId u : component) {
            auto it = first_seen.find(u);
            if (it == first_seen.end()) {
                covered = false;
                break;
            }
            covered_at = std::max(covered_at, it->second);
        }
        const auto t_it = first_seen.find(t);
        std::size_t done_at = covered ? covered_at : path.size();
        if (t_it != first_seen.end()) done_at = std::min(done_at, t_it->second);
        if (done_at < path.size()) {
            if (static_cast<double>(done_at - i) > budget)
                return fail(i, "objective component not explored within the bound");
        } else if (static_cast<double>(path.size() - 1 - i) > budget ||
                   outcome.status == PatchStatus::Exhausted) {
            return fail(i, "objective component never fully explored");
        }
    }
    return {};
}

} // namespace girgnav
