#include "helpers.hpp"

#include <girgnav/error.hpp>
#include <girgnav/objective.hpp>
#include <girgnav/routing.hpp>

#include <doctest.h>

#include <cmath>
#include <set>

using namespace girgnav;

namespace {

/// Straightforward greedy walk using the closed-form objective.
std::vector<VertexId> oracle_greedy(const Graph& g, VertexId s, VertexId t) {
    auto value = [&](VertexId v) {
        if (v == t) return HUGE_VAL;
        const double dist = torus_distance(g.position(v), g.position(t));
        return g.weight(v) / (g.params().w_min * g.params().n * std::pow(dist, g.params().d));
    };
    std::vector<VertexId> path{s};
    while (path.back() != t) {
        const VertexId v = path.back();
        VertexId best = v;
        for (VertexId u : g.neighbors(v))
            if (value(u) > value(best) || (value(u) == value(best) && best != v && u < best)) best = u;
        if (best == v) break;
        path.push_back(best);
    }
    return path;
}

Graph four_vertex() {
    // s = 0, a = 1, b = 2, t = 3
    return testutil::build(testutil::line_params(100), {{2, {0.1}}, {4, {0.4}}, {4, {0.7}}, {1, {0.5}}},
                           {{0, 1}, {0, 2}, {1, 3}});
}

}

TEST_SUITE("routing") {

TEST_CASE("score ordering") {
    CHECK(Score::top() > Score::of(1e308));
    CHECK(Score::of(1.0) > Score::lowest());
    CHECK(Score::top() == Score::top());
    CHECK(ranks_above(3, Score::of(1.0), 5, Score::of(1.0)));
    CHECK_FALSE(ranks_above(5, Score::of(1.0), 3, Score::of(1.0)));
    CHECK(ranks_above(5, Score::of(2.0), 3, Score::of(1.0)));
}

TEST_CASE("phi examples") {
    const Graph g = testutil::build(testutil::line_params(100), {{2, {0.3}}, {1, {0.2}}, {4, {0.3}}, {2, {0.25}}}, {});
    CHECK(phi(g, 1, 1).is_top());
    CHECK(phi(g, 0, 1).value() == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(phi(g, 2, 1).value() == doctest::Approx(2 * phi(g, 0, 1).value()));
    CHECK(phi(g, 3, 1).value() == doctest::Approx(2 * phi(g, 0, 1).value()));
}

TEST_CASE("degenerate relaxation equals phi") {
    const Graph g = sample_graph(testutil::small_params(3000, 3));
    Relaxation rx;
    rx.exponent_fn = [](double) { return 0.0; };
    rx.seed = 5;
    const auto obj = Objective::relaxed(4, rx);
    for (VertexId v = 0; v < g.num_vertices(); ++v) CHECK(phi_relaxed(g, v, 4, obj) == phi(g, v, 4));
}

TEST_CASE("relaxation at the boundary of the min") {
    // phi(v) = 2 / (100 * 0.04) = 0.5 = 1 / w_v
    const Graph g = testutil::build(testutil::line_params(100), {{2, {0.24}}, {1, {0.2}}}, {});
    Relaxation rx;
    rx.band = {2.0, 2.0};
    rx.exponent_fn = [](double) { return 0.5; };
    const double phi0 = phi(g, 0, 1).value();
    CHECK(phi0 == doctest::Approx(0.5));
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        rx.seed = seed;
        const auto obj = Objective::relaxed(1, rx);
        const double factor = phi_relaxed(g, 0, 1, obj).value() / (phi0 * 2.0);
        CHECK(factor >= std::pow(2.0, -0.5) - 1e-12);
        CHECK(factor <= std::pow(2.0, 0.5) + 1e-12);
        CHECK(phi_relaxed(g, 0, 1, obj) == phi_relaxed(g, 0, 1, obj));
        CHECK(phi_relaxed(g, 1, 1, obj).is_top());
    }
}

TEST_CASE("relaxed objective validation") {
    const Graph g = four_vertex();
    Relaxation rx;
    rx.band = {0.0, 1.0};
    CHECK_THROWS_AS(Objective::relaxed(3, rx), InvalidInput);
    rx.band = {2.0, 1.0};
    CHECK_THROWS_AS(Objective::relaxed(3, rx), InvalidInput);
    CHECK_THROWS_AS(phi_relaxed(g, 0, 3, Objective::exact(3)), InvalidInput);
}

TEST_CASE("relaxed scores stay within the band of phi") {
    const Graph g = sample_graph(testutil::small_params(5000, 8));
    Relaxation rx;
    rx.band = {0.5, 2.0};
    rx.seed = 3;
    const auto obj = Objective::relaxed(11, rx);
    const double gn = default_relax_exponent(g.params().n);
    CHECK(gn == doctest::Approx(1.0 / std::log(std::log(5000.0))));
    CHECK(default_relax_exponent(3) == doctest::Approx(1.0 / std::log(std::log(27.0))));
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (v == 11) continue;
        const double p = phi(g, v, 11).value(), q = phi_relaxed(g, v, 11, obj).value();
        const double base = std::min(g.weight(v), 1.0 / p);
        const double spread = std::pow(base, gn);
        CHECK(q >= p * 0.5 * std::min(spread, 1.0 / spread) * (1 - 1e-12));
        CHECK(q <= p * 2.0 * std::max(spread, 1.0 / spread) * (1 + 1e-12));
    }
}

TEST_CASE("weak relaxation floor") {
    const Graph g = sample_graph(testutil::small_params(5000, 8));
    const VertexId t = 11;
    Relaxation rx;
    rx.weak = true;
    rx.delta = 0.2;
    const auto obj = Objective::relaxed(t, rx);
    const double cap = std::pow(g.weight(t), -1.0 + 0.2), floor = std::pow(g.weight(t), -1.0 + 0.1);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (v == t) continue;
        if (phi(g, v, t).value() >= cap) CHECK(phi_relaxed(g, v, t, obj).value() >= floor);
    }
}

TEST_CASE("greedy examples") {
    const Graph g = four_vertex();
    const auto same = greedy_route(g, 3, Objective::exact(3), 10);
    CHECK(same.status == RouteStatus::Delivered);
    CHECK(same.steps == 0);
    CHECK(same.path == std::vector<VertexId>{3});

    const Graph iso = testutil::build(testutil::line_params(100), {{1, {0.1}}, {1, {0.5}}}, {});
    const auto dead = greedy_route(iso, 0, Objective::exact(1), 10);
    CHECK(dead.status == RouteStatus::DeadEnd);
    CHECK(dead.steps == 0);

    CHECK(phi(g, 1, 3) > phi(g, 2, 3));
    CHECK(phi(g, 2, 3) > phi(g, 0, 3));
    const auto r = greedy_route(g, 0, Objective::exact(3), 10);
    CHECK(r.status == RouteStatus::Delivered);
    CHECK(r.steps == 2);
    CHECK(r.path == std::vector<VertexId>{0, 1, 3});
    CHECK(r.path == oracle_greedy(g, 0, 3));
    REQUIRE(r.trace.size() == 3);
    CHECK(r.trace[0].inspected == 2);
    CHECK(r.trace[1].score == phi(g, 1, 3));
    CHECK(r.trace[2].score.is_top());

    CHECK_THROWS_AS(greedy_route(g, 9, Objective::exact(3), 10), InvalidInput);
    CHECK_THROWS_AS(greedy_route(g, 0, Objective::exact(9), 10), InvalidInput);
    CHECK_THROWS_AS(greedy_route(g, 0, Objective::exact(3), 0), InvalidInput);
}

TEST_CASE("step limit is reported distinctly") {
    const Graph g = four_vertex();
    const auto r = greedy_route(g, 0, Objective::exact(3), 1);
    CHECK(r.status == RouteStatus::StepLimit);
    CHECK(r.steps == 1);
    CHECK(default_step_limit(1e6) == 10 * 21);
    CHECK(default_step_limit(1024) == 110);
}

TEST_CASE("ties break towards the smaller id") {
    // vertices 1 and 2 have identical weight and distance to t
    const Graph g = testutil::build(testutil::line_params(100), {{1, {0.0}}, {3, {0.25}}, {3, {0.75}}, {1, {0.5}}},
                                    {{0, 1}, {0, 2}});
    const auto r = greedy_route(g, 0, Objective::exact(3), 10);
    REQUIRE(r.path.size() >= 2);
    CHECK(r.path[1] == 1);
}

TEST_CASE("greedy invariants on sampled graphs") {
    for (double alpha : {kInfinity, 2.0}) {
        const Graph g = sample_graph(testutil::small_params(20000, 21, alpha));
        Rng rng(7);
        for (int k = 0; k < 300; ++k) {
            const auto s = VertexId(rng.below(g.num_vertices())), t = VertexId(rng.below(g.num_vertices()));
            const auto obj = Objective::exact(t);
            const auto r = greedy_route(g, s, obj, default_step_limit(g.params().n));
            CHECK(r.steps == r.path.size() - 1);
            CHECK(r.trace.size() == r.path.size());
            CHECK((r.status == RouteStatus::Delivered) == (r.path.back() == t));
            std::set<VertexId> seen(r.path.begin(), r.path.end());
            CHECK(seen.size() == r.path.size());
            for (std::size_t i = 1; i < r.path.size(); ++i) {
                CHECK(g.has_edge(r.path[i - 1], r.path[i]));
                CHECK(r.trace[i].score > r.trace[i - 1].score);
            }
            if (s != t && g.has_edge(s, t)) {
                CHECK(r.status == RouteStatus::Delivered);
                CHECK(r.steps == 1);
            }
            if (r.status != RouteStatus::StepLimit) CHECK(r.path == oracle_greedy(g, s, t));

            Relaxation rx;
            rx.exponent_fn = [](double) { return 0.0; };
            rx.seed = std::uint64_t(k);
            const auto relaxed = greedy_route(g, s, Objective::relaxed(t, rx), default_step_limit(g.params().n));
            CHECK(relaxed.path == r.path);
            CHECK(relaxed.status == r.status);
        }
    }
}

}
