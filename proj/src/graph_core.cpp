#include <girgnav/graph_core.hpp>

#include <girgnav/error.hpp>
#include <girgnav/objective.hpp>

#include <algorithm>
#include <limits>

namespace girgnav {

namespace {

constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();

} // namespace

std::uint32_t ComponentLabeling::largest() const {
    if (component_sizes.empty()) throw InvalidInput("labeling has no components");
    return static_cast<std::uint32_t>(std::max_element(component_sizes.begin(), component_sizes.end()) -
                                      component_sizes.begin());
}

std::optional<std::uint32_t> bfs_distance(const Graph& g, VertexId s, VertexId t) {
    g.check_vertex(s);
    g.check_vertex(t);
    if (s == t) return 0u;
    // bidirectional, one full layer at a time from the cheaper side
    std::vector<std::uint32_t> ds(g.num_vertices(), kUnseen), dt(g.num_vertices(), kUnseen);
    std::vector<VertexId> fs{s}, ft{t}, next;
    ds[s] = 0;
    dt[t] = 0;
    auto volume = [&](const std::vector<VertexId>& f) {
        std::size_t vol = 0;
        for (VertexId v : f) vol += g.degree(v);
        return vol;
    };
    while (!fs.empty() && !ft.empty()) {
        const bool from_s = volume(fs) <= volume(ft);
        auto& frontier = from_s ? fs : ft;
        auto& mine = from_s ? ds : dt;
        const auto& other = from_s ? dt : ds;
        std::uint32_t best = kUnseen;
        next.clear();
        for (VertexId u : frontier) {
            for (VertexId v : g.neighbors(u)) {
                if (other[v] != kUnseen) best = std::min(best, mine[u] + 1 + other[v]);
                if (mine[v] != kUnseen) continue;
                mine[v] = mine[u] + 1;
                next.push_back(v);
            }
        }
        if (best != kUnseen) return best;
        frontier.swap(next);
    }
    return std::nullopt;
}

std::vector<std::optional<std::uint32_t>> bfs_distances(const Graph& g, VertexId s) {
    g.check_vertex(s);
    std::vector<std::uint32_t> dist(g.num_vertices(), kUnseen);
    std::vector<VertexId> queue{s};
    dist[s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const VertexId u = queue[head];
        for (VertexId v : g.neighbors(u)) {
            if (dist[v] != kUnseen) continue;
            dist[v] = dist[u] + 1;
            queue.push_back(v);
        }
    }
    std::vector<std::optional<std::uint32_t>> out(g.num_vertices());
    for (std::size_t v = 0; v < dist.size(); ++v)
        if (dist[v] != kUnseen) out[v] = dist[v];
    return out;
}

ComponentLabeling connected_components(const Graph& g) {
    ComponentLabeling lab;
    const std::size_t n = g.num_vertices();
    lab.component_id.assign(n, kUnseen);
    std::vector<VertexId> queue;
    for (VertexId root = 0; root < n; ++root) {
        if (lab.component_id[root] != kUnseen) continue;
        const auto id = static_cast<std::uint32_t>(lab.component_sizes.size());
        queue.assign(1, root);
        lab.component_id[root] = id;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            for (VertexId v : g.neighbors(queue[head])) {
                if (lab.component_id[v] != kUnseen) continue;
                lab.component_id[v] = id;
                queue.push_back(v);
            }
        }
        lab.component_sizes.push_back(queue.size());
    }
    return lab;
}

std::vector<VertexId> vertices_above_objective(const Graph& g, VertexId t, double phi0) {
    if (!(phi0 > 0.0)) throw InvalidInput("phi0 must be positive");
    g.check_vertex(t);
    const Score bar = Score::of(phi0);
    std::vector<VertexId> out;
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        if (phi(g, v, t) >= bar) out.push_back(v);
    return out;
}

} // namespace girgnav
