#pragma once

#include <girgnav/model.hpp>
#include <girgnav/objective.hpp>
#include <girgnav/patching.hpp>
#include <girgnav/routing.hpp>

#include <cstddef>
#include <optional>
#include <string>

namespace girgnav {

struct CheckResult {
    bool passed = true;
    std::optional<std::size_t> position;  ///< path index of the first violation
    std::string message;

    explicit operator bool() const { return passed; }
};

/// Replays a greedy route as a patching outcome (one EXPLORE per move).
PatchOutcome to_patch_outcome(const RouteOutcome& route);

/// Greedy choices: every move to a never-visited vertex picks the best-ranked
/// never-visited neighbor, and a first visit to a vertex with a strictly
/// better neighbor is followed by a move to its best-ranked neighbor.
CheckResult check_p1(const PatchOutcome& outcome, const Graph& g, const Objective& obj);

/// Poly-time exploration: with k distinct vertices visited, the next new
/// vertex follows within c * k^poly_exponent moves. A trailing stretch
/// without discoveries is exempt only when the run ended DELIVERED or EXHAUSTED.
CheckResult check_p2(const PatchOutcome& outcome, double poly_exponent = 2.0, double c = 4.0);

/// Poly-time exhaustive search: after each record vertex v, the component of
/// v among vertices scoring at least score(v) is fully visited, or the target
/// reached, within c * |S|^poly_exponent moves.
CheckResult check_p3(const PatchOutcome& outcome, const Graph& g, const Objective& obj,
                     double poly_exponent = 3.0, double c = 4.0);

} // namespace girgnav
