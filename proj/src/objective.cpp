#include <girgnav/objective.hpp>

#include <girgnav/error.hpp>
#include <girgnav/hyperbolic.hpp>

#include <algorithm>
#include <cmath>

namespace girgnav {

Score phi(const Graph& g, VertexId v, VertexId t) {
    g.check_vertex(v);
    g.check_vertex(t);
    if (v == t) return Score::top();
    const ModelParams& p = g.params();
    const double dist_d = std::pow(torus_distance(g.position(v), g.position(t)), p.d);
    if (dist_d == 0.0) return Score::of(std::numeric_limits<double>::max());
    return Score::of(g.weight(v) / (p.w_min * p.n * dist_d));
}

double default_relax_exponent(double n) { return 1.0 / std::log(std::log(std::max(n, 27.0))); }

Objective Objective::exact(VertexId target) {
    Objective o;
    o.kind_ = ObjectiveKind::ExactPhi;
    o.target_ = target;
    return o;
}

Objective Objective::relaxed(VertexId target, Relaxation relaxation) {
    const auto [lo, hi] = relaxation.band;
    if (!(lo > 0.0) || !(hi > 0.0)) throw InvalidInput("relaxation band bounds must be positive");
    if (lo > hi) throw InvalidInput("relaxation band must satisfy lo <= hi");
    if (relaxation.weak && !(relaxation.delta > 0.0)) throw InvalidInput("weak relaxation needs delta > 0");
    Objective o;
    o.kind_ = ObjectiveKind::RelaxedPhi;
    o.target_ = target;
    o.relaxation_ = std::move(relaxation);
    return o;
}

Objective Objective::hyperbolic(VertexId target, const HyperbolicGraph& hg) {
    hg.graph.check_vertex(target);
    Objective o;
    o.kind_ = ObjectiveKind::HyperbolicPhi;
    o.target_ = target;
    o.hyperbolic_ = &hg;
    return o;
}

Score Objective::score(const Graph& g, VertexId v) const {
    switch (kind_) {
    case ObjectiveKind::ExactPhi:
        return phi(g, v, target_);
    case ObjectiveKind::RelaxedPhi:
        return phi_relaxed(g, v, target_, *this);
    case ObjectiveKind::HyperbolicPhi:
        if (v == target_) return Score::top();
        return Score::of(phi_hyperbolic(*hyperbolic_, v, target_));
    }
    return Score::lowest();
}

namespace {

double unit_from(std::uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

} // namespace

Score phi_relaxed(const Graph& g, VertexId v, VertexId t, const Objective& obj) {
    if (obj.kind() != ObjectiveKind::RelaxedPhi) throw InvalidInput("phi_relaxed needs a relaxed objective");
    const Relaxation& rx = obj.relaxation();
    const auto [lo, hi] = rx.band;
    if (!(lo > 0.0) || !(hi > 0.0)) throw InvalidInput("relaxation band bounds must be positive");
    const Score exact = phi(g, v, t);
    if (exact.is_top()) return exact;

    const std::uint64_t h = derive_seed(rx.seed, {stream::relax, v});
    const double u_factor = unit_from(splitmix64(h ^ 1));
    const double u_exponent = unit_from(splitmix64(h ^ 2));
    const double n = g.params().n;

    if (rx.weak) {
        const double w_t = g.weight(t);
        if (exact.value() >= std::pow(w_t, -1.0 + rx.delta)) {
            const double floor = std::pow(w_t, -1.0 + rx.delta / 2.0);
            return Score::of(floor * (1.0 + unit_from(splitmix64(h ^ 3))));
        }
    }

    const double g_n = rx.exponent_fn ? rx.exponent_fn(n) : default_relax_exponent(n);
    const double factor = lo + (hi - lo) * u_factor;
    const double exponent = g_n * (2.0 * u_exponent - 1.0);
    const double base = std::min(g.weight(v), 1.0 / exact.value());
    return Score::of(exact.value() * factor * std::pow(base, exponent));
}

ScoreCache::ScoreCache(const Graph& g, const Objective& obj)
    : graph_(g), objective_(obj) {}

Score ScoreCache::operator()(VertexId v) {
    auto [it, inserted] = scores_.try_emplace(v);
    if (inserted) it->second = objective_.score(graph_, v);
    return it->second;
}

} // namespace girgnav
