#include "helpers.hpp"

#include <girgnav/model.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

using namespace girgnav;

namespace {

using EdgeList = std::vector<std::pair<VertexId, VertexId>>;

struct Points {
    std::vector<double> weights, coords;
};

Points random_points(const ModelParams& p, std::size_t count, std::uint64_t seed) {
    Rng r(seed);
    Points pts;
    for (std::size_t i = 0; i < count; ++i) {
        pts.weights.push_back(sample_weight(p, r.uniform_open_closed()));
        for (int k = 0; k < p.d; ++k) pts.coords.push_back(r.uniform());
    }
    return pts;
}

double pair_probability(const ModelParams& p, const Points& pts, std::size_t u, std::size_t v) {
    const std::size_t d = static_cast<std::size_t>(p.d);
    std::span<const double> x(pts.coords.data() + u * d, d), y(pts.coords.data() + v * d, d);
    return edge_probability(p, pts.weights[u], pts.weights[v], torus_distance(x, y));
}

EdgeList normalized(EdgeList e) {
    for (auto& [u, v] : e)
        if (u > v) std::swap(u, v);
    std::sort(e.begin(), e.end());
    return e;
}

}

TEST_SUITE("sampler") {

TEST_CASE("threshold sampler equals brute force") {
    for (int d : {1, 2, 3}) {
        for (double n : {50.0, 2000.0, 20000.0}) {
            for (bool ep3 : {false, true}) {
                ModelParams p = testutil::small_params(n, 1);
                p.d = d;
                p.ep3 = ep3;
                p.c1 = d == 2 ? 1.0 : 0.7;
                p.c2 = 2.0;
                const auto count = static_cast<std::size_t>(std::min(n, 3000.0));
                const Points pts = random_points(p, count, 17 + static_cast<std::uint64_t>(d));
                EdgeList brute;
                for (std::size_t u = 0; u < count; ++u)
                    for (std::size_t v = u + 1; v < count; ++v)
                        if (pair_probability(p, pts, u, v) == 1.0) brute.push_back({VertexId(u), VertexId(v)});
                const EdgeList got = normalized(sample_edges(p, pts.weights, pts.coords, 99));
                CAPTURE(d);
                CAPTURE(n);
                CHECK(got == brute);
            }
        }
    }
}

TEST_CASE("threshold sampler with c1 below one") {
    ModelParams p = testutil::small_params(500, 1);
    p.c1 = 0.3;
    const Points pts = random_points(p, 500, 5);
    EdgeList brute;
    for (std::size_t u = 0; u < 500; ++u)
        for (std::size_t v = u + 1; v < 500; ++v)
            if (pair_probability(p, pts, u, v) == 1.0) brute.push_back({VertexId(u), VertexId(v)});
    CHECK(normalized(sample_edges(p, pts.weights, pts.coords, 3)) == brute);
}

TEST_CASE("probabilistic sampler matches pair probabilities") {
    // fixed vertex set, many edge seeds: every pair is present with its own probability
    for (double alpha : {1.5, 2.5}) {
        for (bool ep3 : {false, true}) {
            ModelParams p = testutil::small_params(60, 1, alpha);
            p.ep3 = ep3;
            p.kernel_c = 0.7;
            const std::size_t count = 60;
            Points pts = random_points(p, count, 31);
            pts.weights[0] = 40.0;
            pts.weights[1] = 15.0;
            std::map<std::pair<VertexId, VertexId>, int> hits;
            const int runs = 4000;
            for (int s = 0; s < runs; ++s)
                for (auto e : normalized(sample_edges(p, pts.weights, pts.coords, derive_seed(77, {std::uint64_t(s)}))))
                    ++hits[e];
            double chi = 0.0;
            int dof = 0;
            for (std::size_t u = 0; u < count; ++u) {
                for (std::size_t v = u + 1; v < count; ++v) {
                    const double pr = pair_probability(p, pts, u, v);
                    const double got = hits[{VertexId(u), VertexId(v)}];
                    if (pr == 0.0 || pr == 1.0) {
                        CHECK(got == pr * runs);
                        continue;
                    }
                    const double var = runs * pr * (1 - pr);
                    CHECK(std::abs(got - runs * pr) <= 6.0 * std::sqrt(var) + 1.0);
                    chi += (got - runs * pr) * (got - runs * pr) / var;
                    ++dof;
                }
            }
            CAPTURE(alpha);
            CAPTURE(ep3);
            CHECK(dof > 100);
            // chi-square with dof degrees of freedom: mean dof, sd sqrt(2 dof)
            CHECK(chi < dof + 5.0 * std::sqrt(2.0 * dof));
        }
    }
}

TEST_CASE("probabilistic sampler reproduces expected edge counts by distance") {
    ModelParams p = testutil::small_params(3000, 1, 2.0);
    const std::size_t count = 3000;
    const Points pts = random_points(p, count, 41);
    const std::vector<double> cuts{0.0, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.51};
    std::vector<double> expect(cuts.size() - 1), var(cuts.size() - 1);
    auto bin_of = [&](std::size_t u, std::size_t v) {
        std::span<const double> x(pts.coords.data() + 2 * u, 2), y(pts.coords.data() + 2 * v, 2);
        const double dist = torus_distance(x, y);
        return std::size_t(std::upper_bound(cuts.begin(), cuts.end(), dist) - cuts.begin() - 1);
    };
    for (std::size_t u = 0; u < count; ++u)
        for (std::size_t v = u + 1; v < count; ++v) {
            const double pr = pair_probability(p, pts, u, v);
            const auto b = bin_of(u, v);
            expect[b] += pr;
            var[b] += pr * (1 - pr);
        }
    std::vector<double> got(expect.size());
    const int runs = 20;
    for (int s = 0; s < runs; ++s)
        for (auto [u, v] : sample_edges(p, pts.weights, pts.coords, derive_seed(5, {std::uint64_t(s)})))
            got[bin_of(u, v)] += 1.0;
    for (std::size_t b = 0; b < expect.size(); ++b) {
        CAPTURE(b);
        CHECK(std::abs(got[b] / runs - expect[b]) <= 5.0 * std::sqrt(var[b] / runs) + 0.05);
    }
}

TEST_CASE("sampler is deterministic in the edge seed") {
    ModelParams p = testutil::small_params(2000, 1, 2.0);
    const Points pts = random_points(p, 2000, 3);
    CHECK(normalized(sample_edges(p, pts.weights, pts.coords, 1)) ==
          normalized(sample_edges(p, pts.weights, pts.coords, 1)));
    CHECK(normalized(sample_edges(p, pts.weights, pts.coords, 1)) !=
          normalized(sample_edges(p, pts.weights, pts.coords, 2)));
}

TEST_CASE("degenerate vertex sets") {
    ModelParams p = testutil::small_params(10, 1, 2.0);
    CHECK(sample_edges(p, {}, {}, 1).empty());
    std::vector<double> w{1.0}, c{0.5, 0.5};
    CHECK(sample_edges(p, w, c, 1).empty());
}

}
