#include <girgnav/patching.hpp>

#include <girgnav/error.hpp>

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace girgnav {

std::string_view to_string(PatchStatus status) {
    switch (status) {
    case PatchStatus::Delivered: return "DELIVERED";
    case PatchStatus::Exhausted: return "EXHAUSTED";
    case PatchStatus::StepLimit: return "STEP_LIMIT";
    }
    return "?";
}

std::string_view to_string(PatchEventKind kind) {
    switch (kind) {
    case PatchEventKind::Explore: return "EXPLORE";
    case PatchEventKind::Backtrack: return "BACKTRACK";
    case PatchEventKind::NewPhi: return "NEW_PHI";
    case PatchEventKind::ResetPhi: return "RESET_PHI";
    }
    return "?";
}

int VertexPatchMemory::words() const {
    return int(phi_mark.has_value()) + int(parent.has_value()) + int(started_new_dfs) +
           int(previous_phi.has_value());
}

std::uint64_t default_patch_step_limit(double n) {
    return static_cast<std::uint64_t>(50.0 * std::max(n, 1.0));
}

namespace {

struct Ranked {
    Score score;
    VertexId id;
};

bool above(const Ranked& a, const Ranked& b) { return ranks_above(a.id, a.score, b.id, b.score); }

/// Scores and best-first neighbor lists, computed on demand for one run.
class Scratch {
public:
    Scratch(const Graph& g, const Objective& obj) : g_(g), score_(g, obj) {}

    Score score(VertexId v) { return score_(v); }
    Ranked ranked(VertexId v) { return {score_(v), v}; }

    const std::vector<Ranked>& sorted(VertexId v) {
        auto [it, inserted] = sorted_.try_emplace(v);
        if (inserted) {
            for (VertexId u : g_.neighbors(v)) it->second.push_back(ranked(u));
            std::sort(it->second.begin(), it->second.end(), above);
        }
        return it->second;
    }

private:
    const Graph& g_;
    ScoreCache score_;
    std::unordered_map<VertexId, std::vector<Ranked>> sorted_;
};

void validate_route(const Graph& g, VertexId s, const Objective& obj, std::uint64_t step_limit) {
    g.check_vertex(s);
    g.check_vertex(obj.target());
    if (step_limit == 0) throw InvalidInput("step_limit must be at least 1");
}

class PhiDfs {
public:
    PhiDfs(const Graph& g, VertexId s, const Objective& obj, std::uint64_t step_limit)
        : t_(obj.target()), limit_(step_limit), scratch_(g, obj), pos_(s) {}

    PatchOutcome run() {
        const VertexId s = pos_;
        out_.path.push_back(s);
        if (s == t_) return finish(PatchStatus::Delivered);

        m_.last_visited_vertex = s;
        store(s, [&](VertexPatchMemory& mem) { mem.phi_mark = scratch_.score(s); });
        Action next{Kind::Explore, s};
        while (true) {
            std::optional<Action> a =
                next.kind == Kind::Explore ? explore(next.vertex) : backtrack(next.vertex);
            if (!a) return out_;
            next = *a;
        }
    }

private:
    enum class Kind { Explore, Backtrack };
    struct Action {
        Kind kind;
        VertexId vertex;
    };

    PatchOutcome& finish(PatchStatus status) {
        out_.status = status;
        std::unordered_set<VertexId> distinct(out_.path.begin(), out_.path.end());
        out_.distinct_visited = distinct.size();
        return out_;
    }

    VertexPatchMemory& mem(VertexId v) { return memory_[v]; }

    template <class F>
    void store(VertexId v, F&& f) {
        VertexPatchMemory& mm = mem(v);
        f(mm);
        out_.max_vertex_memory_words = std::max(out_.max_vertex_memory_words, mm.words());
    }

    void log(PatchEventKind kind, VertexId v) { out_.event_log.push_back({out_.steps, kind, v, m_.phi}); }

    /// Moves the message to v. Returns false when the step budget is exhausted.
    bool move(VertexId v, PatchEventKind kind) {
        if (v != pos_) {
            if (out_.steps >= limit_) {
                finish(PatchStatus::StepLimit);
                return false;
            }
            ++out_.steps;
            m_.last_visited_vertex = pos_;
            pos_ = v;
            out_.path.push_back(v);
        }
        log(kind, v);
        return true;
    }

    std::optional<Action> explore(VertexId v) {
        if (!move(v, PatchEventKind::Explore)) return std::nullopt;
        if (v == t_) {
            finish(PatchStatus::Delivered);
            return std::nullopt;
        }
        const VertexPatchMemory& mv = mem(v);
        if (mv.phi_mark && *mv.phi_mark == m_.phi) return Action{Kind::Backtrack, m_.last_visited_vertex};

        const Score sv = scratch_.score(v);
        if (sv > m_.best_seen_objective) set_new_phi(v, sv);
        init_vertex(v);
        return continue_at(v);
    }

    /// Body of EXPLORE after initialization: go to the best neighbor if any
    /// neighbor reaches the threshold, otherwise return to the parent.
    Action continue_at(VertexId v) {
        const auto& nb = scratch_.sorted(v);
        if (!nb.empty() && nb.front().score >= m_.phi) return {Kind::Explore, nb.front().id};
        return {Kind::Backtrack, m_.last_visited_vertex};
    }

    void set_new_phi(VertexId v, Score sv) {
        m_.best_seen_objective = sv;
        const auto& nb = scratch_.sorted(v);
        if (!nb.empty() && nb.front().score >= sv) {
            store(v, [&](VertexPatchMemory& mm) {
                mm.started_new_dfs = true;
                mm.previous_phi = m_.phi;
            });
            m_.phi = sv;
            log(PatchEventKind::NewPhi, v);
        }
    }

    void init_vertex(VertexId v) {
        VertexPatchMemory& mv = mem(v);
        if (mv.phi_mark && *mv.phi_mark < m_.phi) ++out_.single_phi_violations;
        store(v, [&](VertexPatchMemory& mm) {
            mm.phi_mark = m_.phi;
            mm.parent = m_.last_visited_vertex;
        });
    }

    std::optional<Action> backtrack(VertexId v) {
        if (!move(v, PatchEventKind::Backtrack)) return std::nullopt;
        const VertexPatchMemory mv = mem(v);
        const Ranked from = scratch_.ranked(m_.last_visited_vertex);
        const auto& nb = scratch_.sorted(v);
        auto it = std::partition_point(nb.begin(), nb.end(), [&](const Ranked& r) { return !above(from, r); });
        for (; it != nb.end() && it->score >= m_.phi; ++it)
            if (!mv.parent || it->id != *mv.parent) return Action{Kind::Explore, it->id};

        if (mv.started_new_dfs) {
            store(v, [&](VertexPatchMemory& mm) {
                mm.started_new_dfs = false;
                mm.phi_mark = mm.previous_phi;
            });
            m_.phi = *mv.previous_phi;
            log(PatchEventKind::ResetPhi, v);
            m_.last_visited_vertex = *mv.parent;
            return continue_at(v);
        }
        if (*mv.parent == v) {
            finish(PatchStatus::Exhausted);
            return std::nullopt;
        }
        return Action{Kind::Backtrack, *mv.parent};
    }

    VertexId t_;
    std::uint64_t limit_;
    Scratch scratch_;
    VertexId pos_;
    MessagePatchMemory m_;
    std::unordered_map<VertexId, VertexPatchMemory> memory_;
    PatchOutcome out_;
};

} // namespace

PatchOutcome patch_route(const Graph& g, VertexId s, const Objective& obj, std::uint64_t step_limit) {
    validate_route(g, s, obj, step_limit);
    return PhiDfs(g, s, obj, step_limit).run();
}

PatchOutcome patch_route_history(const Graph& g, VertexId s, const Objective& obj, std::uint64_t step_limit) {
    validate_route(g, s, obj, step_limit);
    const VertexId t = obj.target();
    Scratch scratch(g, obj);
    PatchOutcome out;
    out.path.push_back(s);
    out.event_log.push_back({0, PatchEventKind::Explore, s, Score::lowest()});

    struct TreeNode {
        VertexId parent;
        std::uint32_t depth;
    };
    std::unordered_map<VertexId, TreeNode> tree;

    struct Edge {
        Ranked to;
        VertexId from;
    };
    auto worse = [](const Edge& a, const Edge& b) {
        if (a.to.id == b.to.id) return a.from > b.from;
        return above(b.to, a.to);
    };
    std::priority_queue<Edge, std::vector<Edge>, decltype(worse)> frontier(worse);

    VertexId pos = s;
    auto visit = [&](VertexId v, VertexId parent) {
        const std::uint32_t depth = v == parent ? 0 : tree.at(parent).depth + 1;
        tree.emplace(v, TreeNode{parent, depth});
        for (const Ranked& r : scratch.sorted(v))
            if (!tree.contains(r.id)) frontier.push({r, v});
    };
    auto done = [&](PatchStatus status) {
        out.status = status;
        out.distinct_visited = tree.size();
        out.max_vertex_memory_words = tree.empty() ? 0 : 1;
        return out;
    };
    auto move = [&](VertexId v, PatchEventKind kind) {
        if (out.steps >= step_limit) return false;
        ++out.steps;
        pos = v;
        out.path.push_back(v);
        out.event_log.push_back({out.steps, kind, v, Score::lowest()});
        return true;
    };

    visit(s, s);
    bool fresh = true;
    while (true) {
        if (pos == t) return done(PatchStatus::Delivered);
        if (fresh) {
            const auto& nb = scratch.sorted(pos);
            if (!nb.empty() && nb.front().score > scratch.score(pos)) {
                const VertexId b = nb.front().id;
                if (!move(b, PatchEventKind::Explore)) return done(PatchStatus::StepLimit);
                fresh = !tree.contains(b);
                if (fresh) visit(b, out.path[out.path.size() - 2]);
                continue;
            }
        }
        while (!frontier.empty() && tree.contains(frontier.top().to.id)) frontier.pop();
        if (frontier.empty()) return done(PatchStatus::Exhausted);
        const Edge e = frontier.top();
        frontier.pop();

        std::vector<VertexId> up, down;
        VertexId a = pos, b = e.from;
        while (tree.at(a).depth > tree.at(b).depth) a = tree.at(a).parent, up.push_back(a);
        while (tree.at(b).depth > tree.at(a).depth) down.push_back(b), b = tree.at(b).parent;
        while (a != b) {
            a = tree.at(a).parent;
            up.push_back(a);
            down.push_back(b);
            b = tree.at(b).parent;
        }
        std::reverse(down.begin(), down.end());
        up.insert(up.end(), down.begin(), down.end());
        for (VertexId v : up)
            if (!move(v, PatchEventKind::Backtrack)) return done(PatchStatus::StepLimit);
        if (!move(e.to.id, PatchEventKind::Explore)) return done(PatchStatus::StepLimit);
        visit(e.to.id, e.from);
        fresh = true;
    }
}

void write_event_log(std::ostream& out, const std::vector<PatchEvent>& events) {
    char buf[64];
    for (const PatchEvent& e : events) {
        out << e.step << ' ' << to_string(e.kind) << ' ' << e.vertex << ' ';
        if (e.phi.is_top()) {
            out << "TOP";
        } else if (e.phi == Score::lowest()) {
            out << "NA";
        } else {
            std::snprintf(buf, sizeof buf, "%.17g", e.phi.value());
            out << buf;
        }
        out << '\n';
    }
}

} // namespace girgnav
