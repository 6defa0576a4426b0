#pragma once

#include <girgnav/model.hpp>
#include <girgnav/objective.hpp>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

namespace girgnav {

enum class PatchStatus { Delivered, Exhausted, StepLimit };
enum class PatchEventKind { Explore, Backtrack, NewPhi, ResetPhi };

std::string_view to_string(PatchStatus status);
std::string_view to_string(PatchEventKind kind);

/// One protocol event. `step` is the number of moves made so far; `phi` is
/// the message's current threshold after the event (lowest() prints as NA).
struct PatchEvent {
    std::uint64_t step = 0;
    PatchEventKind kind = PatchEventKind::Explore;
    VertexId vertex = 0;
    Score phi = Score::lowest();

    friend bool operator==(const PatchEvent&, const PatchEvent&) = default;
};

/// Per-vertex state of the constant-memory protocol.
struct VertexPatchMemory {
    std::optional<Score> phi_mark;
    std::optional<VertexId> parent;
    bool started_new_dfs = false;
    std::optional<Score> previous_phi;

    int words() const;
};

/// State carried by the message.
struct MessagePatchMemory {
    Score best_seen_objective = Score::lowest();
    Score phi = Score::lowest();
    VertexId last_visited_vertex = 0;
};

struct PatchOutcome {
    std::vector<VertexId> path;  ///< every position of the message, with repeats
    PatchStatus status = PatchStatus::Exhausted;
    std::uint64_t steps = 0;
    std::size_t distinct_visited = 0;
    int max_vertex_memory_words = 0;
    std::size_t single_phi_violations = 0;
    std::vector<PatchEvent> event_log;
};

/// 50 * n.
std::uint64_t default_patch_step_limit(double n);

/// Greedy Phi-DFS with recursive restarts and constant memory per vertex.
/// Throws InvalidInput on invalid ids or step_limit == 0.
PatchOutcome patch_route(const Graph& g, VertexId s, const Objective& obj, std::uint64_t step_limit);

/// Greedy when leaving a freshly visited vertex towards a better neighbor,
/// otherwise the best unexplored edge out of the visited set.
PatchOutcome patch_route_history(const Graph& g, VertexId s, const Objective& obj, std::uint64_t step_limit);

/// Lines of the form `<step> <event> <vertex> <phi-or-NA>`.
void write_event_log(std::ostream& out, const std::vector<PatchEvent>& events);

} // namespace girgnav
