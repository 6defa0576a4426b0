#include "helpers.hpp"

#include <girgnav/conformance.hpp>
#include <girgnav/error.hpp>
#include <girgnav/graph_core.hpp>
#include <girgnav/patching.hpp>
#include <girgnav/rng.hpp>
#include <girgnav/routing.hpp>

#include <doctest.h>

#include <cstdio>
#include <set>
#include <sstream>

using namespace girgnav;

namespace {

// s = 0, a = 1, b = 2, c = 3, t = 4 with phi(a) > phi(c) > phi(s) > phi(b)
Graph local_maximum() {
    return testutil::build(testutil::line_params(100), {{2, {0.1}}, {4, {0.4}}, {1, {0.0}}, {4, {0.7}}, {1, {0.5}}},
                           {{0, 1}, {1, 2}, {0, 3}, {3, 4}});
}

// component {0, 1, 2} and component {3, 4, 5}; t = 5
Graph two_components() {
    return testutil::build(testutil::line_params(100),
                           {{1, {0.1}}, {2, {0.3}}, {2, {0.0}}, {1, {0.6}}, {1, {0.45}}, {1, {0.5}}},
                           {{0, 1}, {0, 2}, {3, 4}, {4, 5}});
}

using Path = std::vector<VertexId>;

}

TEST_SUITE("patching") {

TEST_CASE("source equals target") {
    const Graph g = local_maximum();
    for (auto f : {patch_route, patch_route_history}) {
        const auto o = f(g, 4, Objective::exact(4), 10);
        CHECK(o.status == PatchStatus::Delivered);
        CHECK(o.steps == 0);
        CHECK(o.path == Path{4});
    }
}

TEST_CASE("invalid arguments") {
    const Graph g = local_maximum();
    for (auto f : {patch_route, patch_route_history}) {
        CHECK_THROWS_AS(f(g, 7, Objective::exact(4), 10), InvalidInput);
        CHECK_THROWS_AS(f(g, 0, Objective::exact(7), 10), InvalidInput);
        CHECK_THROWS_AS(f(g, 0, Objective::exact(4), 0), InvalidInput);
    }
    CHECK(default_patch_step_limit(1000) == 50000);
}

TEST_CASE("local maximum: greedy dies, patching delivers") {
    const Graph g = local_maximum();
    const auto obj = Objective::exact(4);
    CHECK(phi(g, 1, 4) > phi(g, 3, 4));
    CHECK(phi(g, 3, 4) > phi(g, 0, 4));
    CHECK(phi(g, 0, 4) > phi(g, 2, 4));
    const auto greedy = greedy_route(g, 0, obj, 10);
    CHECK(greedy.status == RouteStatus::DeadEnd);
    CHECK(greedy.path == Path{0, 1});

    const auto o = patch_route(g, 0, obj, 100);
    CHECK(o.status == PatchStatus::Delivered);
    CHECK(o.path == Path{0, 1, 0, 1, 0, 3, 4});
    CHECK(o.steps == 6);
    CHECK(o.distinct_visited == 4);
    std::ostringstream log;
    write_event_log(log, o.event_log);
    const double ps = phi(g, 0, 4).value();
    char phi_s[40];
    std::snprintf(phi_s, sizeof phi_s, "%.17g", ps);
    const std::string p(phi_s);
    CHECK(log.str() == "0 EXPLORE 0 NA\n0 NEW_PHI 0 " + p + "\n1 EXPLORE 1 " + p + "\n2 EXPLORE 0 " + p +
                           "\n3 BACKTRACK 1 " + p + "\n4 BACKTRACK 0 " + p + "\n5 EXPLORE 3 " + p + "\n6 EXPLORE 4 " +
                           p + "\n");

    const auto h = patch_route_history(g, 0, obj, 100);
    CHECK(h.status == PatchStatus::Delivered);
    CHECK(h.path == Path{0, 1, 0, 3, 4});
}

TEST_CASE("different components: exhausted after the component of s") {
    const Graph g = two_components();
    const auto obj = Objective::exact(5);
    const auto o = patch_route(g, 0, obj, 1000);
    CHECK(o.status == PatchStatus::Exhausted);
    CHECK(o.path == Path{0, 1, 0, 1, 0, 2, 0, 2, 0, 1, 0, 1, 0, 2, 0, 2, 0});
    CHECK(o.distinct_visited == 3);
    int resets = 0;
    for (const auto& e : o.event_log) resets += e.kind == PatchEventKind::ResetPhi;
    CHECK(resets == 1);

    const auto h = patch_route_history(g, 0, obj, 1000);
    CHECK(h.status == PatchStatus::Exhausted);
    CHECK(std::set<VertexId>(h.path.begin(), h.path.end()) == std::set<VertexId>{0, 1, 2});
}

TEST_CASE("resumed search explores below the restart vertex") {
    // chain s - h - y - t with phi(h) > phi(s) > phi(y): the discarded search at
    // h must not hide y from the resumed search
    const Graph g = testutil::build(testutil::line_params(100), {{2, {0.1}}, {8, {0.2}}, {1, {0.8}}, {1, {0.5}}},
                                    {{0, 1}, {1, 2}, {2, 3}});
    const auto obj = Objective::exact(3);
    CHECK(phi(g, 1, 3) > phi(g, 0, 3));
    CHECK(phi(g, 0, 3) > phi(g, 2, 3));
    CHECK(patch_route(g, 0, obj, 1000).status == PatchStatus::Delivered);
    CHECK(patch_route_history(g, 0, obj, 1000).status == PatchStatus::Delivered);
}

TEST_CASE("step limit") {
    const Graph g = two_components();
    const auto o = patch_route(g, 0, Objective::exact(5), 5);
    CHECK(o.status == PatchStatus::StepLimit);
    CHECK(o.steps == 5);
    CHECK(o.path.size() == 6);
}

TEST_CASE("protocol invariants on sampled graphs") {
    std::size_t same = 0;
    for (double alpha : {kInfinity, 2.0}) {
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            auto params = testutil::small_params(3000, seed, alpha);
            params.w_min = alpha == kInfinity ? 0.6 : 0.3;
            const Graph g = sample_graph(params);
            const auto lab = connected_components(g);
            Rng rng(seed);
            for (int k = 0; k < 40; ++k) {
                const auto s = VertexId(rng.below(g.num_vertices())), t = VertexId(rng.below(g.num_vertices()));
                const auto obj = Objective::exact(t);
                const auto limit = default_patch_step_limit(double(g.num_vertices()));
                const auto greedy = greedy_route(g, s, obj, default_step_limit(double(g.num_vertices())));
                for (auto f : {patch_route, patch_route_history}) {
                    const auto o = f(g, s, obj, limit);
                    CAPTURE(seed);
                    CAPTURE(s);
                    CAPTURE(t);
                    REQUIRE(o.status != PatchStatus::StepLimit);
                    CHECK((o.status == PatchStatus::Delivered) == lab.same(s, t));
                    CHECK((o.status == PatchStatus::Delivered) == (o.path.back() == t));
                    CHECK(o.steps == o.path.size() - 1);
                    CHECK(o.max_vertex_memory_words <= 4);
                    CHECK(o.single_phi_violations == 0);
                    for (std::size_t i = 1; i < o.path.size(); ++i) CHECK(g.has_edge(o.path[i - 1], o.path[i]));
                    if (greedy.status == RouteStatus::Delivered) CHECK(o.path == greedy.path);
                    const auto again = f(g, s, obj, limit);
                    CHECK(again.event_log == o.event_log);
                    CHECK(check_p1(o, g, obj).passed);
                    CHECK(check_p2(o).passed);
                    CHECK(check_p3(o, g, obj).passed);
                }
                same += lab.same(s, t);
            }
        }
    }
    CHECK(same >= 200);
}

}
