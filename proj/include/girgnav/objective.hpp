#pragma once

#include <girgnav/model.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <unordered_map>
#include <utility>

namespace girgnav {

struct HyperbolicGraph;

/// Objective value: a finite real or TOP, which is greater than every finite value.
class Score {
public:
    constexpr Score() = default;

    static constexpr Score top() { return Score(true, 0.0); }
    static constexpr Score of(double value) { return Score(false, value); }
    static constexpr Score lowest() { return Score(false, -std::numeric_limits<double>::infinity()); }

    constexpr bool is_top() const { return top_; }
    constexpr double value() const { return value_; }

    friend constexpr bool operator==(Score a, Score b) { return a.top_ == b.top_ && (a.top_ || a.value_ == b.value_); }
    friend constexpr std::partial_ordering operator<=>(Score a, Score b) {
        if (a.top_ || b.top_) return a.top_ <=> b.top_;
        return a.value_ <=> b.value_;
    }

private:
    constexpr Score(bool top, double value) : top_(top), value_(value) {}

    bool top_ = false;
    double value_ = -std::numeric_limits<double>::infinity();
};

/// Strict total order used for every argmax: higher score first, then smaller id.
inline bool ranks_above(VertexId a, Score sa, VertexId b, Score sb) {
    return sa > sb || (sa == sb && a < b);
}

/// phi(v) = w_v / (wmin n ||x_v - x_t||^d); TOP when v == t.
Score phi(const Graph& g, VertexId v, VertexId t);

/// Default vanishing exponent for relaxed objectives: 1 / ln(ln(max(n, 27))).
double default_relax_exponent(double n);

enum class ObjectiveKind { ExactPhi, RelaxedPhi, HyperbolicPhi };

/// Deterministic perturbation of phi: every vertex v gets a factor B_v drawn
/// from `band` and an exponent E_v drawn from [-g(n), g(n)], both derived from
/// (seed, v) alone.
struct Relaxation {
    std::pair<double, double> band{1.0, 1.0};
    std::function<double(double)> exponent_fn;  ///< g(n); default_relax_exponent when empty
    std::uint64_t seed = 0;
    bool weak = false;    ///< replace scores of vertices with phi >= w_t^(-1+delta)
    double delta = 0.2;
};

/// A scoring function over vertices for a fixed target.
class Objective {
public:
    static Objective exact(VertexId target);
    /// Throws InvalidInput if the band bounds are not positive or out of order.
    static Objective relaxed(VertexId target, Relaxation relaxation);
    /// The HyperbolicGraph must outlive the objective.
    static Objective hyperbolic(VertexId target, const HyperbolicGraph& hg);

    ObjectiveKind kind() const { return kind_; }
    VertexId target() const { return target_; }
    const Relaxation& relaxation() const { return relaxation_; }

    Score score(const Graph& g, VertexId v) const;

private:
    ObjectiveKind kind_ = ObjectiveKind::ExactPhi;
    VertexId target_ = 0;
    Relaxation relaxation_;
    const HyperbolicGraph* hyperbolic_ = nullptr;
};

/// phi~(v) = phi(v) B_v min(w_v, 1/phi(v))^{E_v}; TOP when v == t.
/// Throws InvalidInput unless obj is a relaxed objective.
Score phi_relaxed(const Graph& g, VertexId v, VertexId t, const Objective& obj);

/// Memoizes scores for one (graph, objective) during a single run.
class ScoreCache {
public:
    ScoreCache(const Graph& g, const Objective& obj);

    Score operator()(VertexId v);

private:
    const Graph& graph_;
    const Objective& objective_;
    std::unordered_map<VertexId, Score> scores_;
};

} // namespace girgnav
