#include <girgnav/error.hpp>
#include <girgnav/geometry.hpp>
#include <girgnav/rng.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace girgnav;

namespace {

TorusPoint random_point(Rng& r, int d) {
    std::vector<double> c(static_cast<std::size_t>(d));
    for (double& x : c) x = r.uniform();
    return TorusPoint(c);
}

}

TEST_SUITE("geometry") {

TEST_CASE("torus distance examples") {
    CHECK(torus_distance(TorusPoint({0.1}), TorusPoint({0.9})) == doctest::Approx(0.2).epsilon(1e-15));
    const TorusPoint x({0.3, 0.8});
    CHECK(torus_distance(x, x) == 0.0);
    CHECK(torus_distance(TorusPoint({0.0, 0.0}), TorusPoint({0.4, 0.7})) == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("torus distance rejects mismatched dimensions and bad coordinates") {
    CHECK_THROWS_AS(torus_distance(TorusPoint({0.1}), TorusPoint({0.1, 0.2})), InvalidInput);
    CHECK_THROWS_AS(TorusPoint({1.0}), InvalidInput);
    CHECK_THROWS_AS(TorusPoint({-0.1}), InvalidInput);
}

TEST_CASE("torus distance is a bounded metric") {
    Rng r(11);
    for (int d : {1, 2, 3}) {
        for (int i = 0; i < 20000; ++i) {
            const auto a = random_point(r, d), b = random_point(r, d), c = random_point(r, d);
            const double ab = torus_distance(a, b);
            CHECK(ab == torus_distance(b, a));
            CHECK(ab <= 0.5);
            CHECK(ab <= torus_distance(a, c) + torus_distance(c, b) + 1e-15);
            if (!(a == b)) CHECK(ab > 0.0);
        }
    }
}

TEST_CASE("torus distance is translation invariant") {
    Rng r(12);
    for (int i = 0; i < 20000; ++i) {
        const auto a = random_point(r, 2), b = random_point(r, 2);
        const double dx = r.uniform(), dy = r.uniform();
        auto shift = [&](const TorusPoint& p) {
            std::vector<double> c{std::fmod(p[0] + dx, 1.0), std::fmod(p[1] + dy, 1.0)};
            for (double& v : c)
                if (v >= 1.0) v = 0.0;
            return TorusPoint(c);
        };
        CHECK(std::abs(torus_distance(shift(a), shift(b)) - torus_distance(a, b)) < 1e-12);
    }
}

TEST_CASE("grid cell examples") {
    auto g = grid_cell(TorusPoint({0.30}), 25, 100);
    CHECK(g.cells_per_axis == 4);
    CHECK(g.cell == std::vector<std::uint32_t>{1});
    CHECK(grid_cell(TorusPoint({0.0}), 25, 100).cell == std::vector<std::uint32_t>{0});
    auto h = grid_cell(TorusPoint({0.5, 0.99}), 4, 64);
    CHECK(h.cells_per_axis == 4);
    CHECK(h.cell == std::vector<std::uint32_t>{2, 3});
    CHECK(grid_cell(TorusPoint({0.25}), 25, 100).cell == std::vector<std::uint32_t>{1});
}

TEST_CASE("grid cell requires w < n") {
    CHECK_THROWS_AS(grid_cell(TorusPoint({0.1}), 100, 100), InvalidInput);
    CHECK_THROWS_AS(grid_cell(TorusPoint({0.1}), 0, 100), InvalidInput);
}

TEST_CASE("cell count uses the floor and recomputes the volume") {
    CHECK(w_grid_cells_per_axis(3, 100, 2) == 5);
    CHECK(w_grid_cell_volume(3, 100, 2) == doctest::Approx(1.0 / 25));
    CHECK(w_grid_cells_per_axis(1, 1000, 3) == 10);
    CHECK(w_grid_cells_per_axis(1, 999, 3) == 9);
}

TEST_CASE("grid cells partition the torus") {
    Rng r(13);
    for (int i = 0; i < 20000; ++i) {
        const auto p = random_point(r, 2);
        const auto g = grid_cell(p, 3, 100);
        for (int k = 0; k < 2; ++k) {
            const double lo = double(g.cell[k]) / g.cells_per_axis, hi = double(g.cell[k] + 1) / g.cells_per_axis;
            CHECK(p[k] >= lo);
            CHECK(p[k] < hi);
        }
    }
}

TEST_CASE("neighbor cells") {
    GridIndex g{{0}, 4};
    CHECK(neighbor_cells(g, 0) == std::vector<GridIndex>{g});
    auto nb = neighbor_cells(g, 1);
    std::vector<std::uint32_t> ids;
    for (auto& c : nb) ids.push_back(c.cell[0]);
    std::sort(ids.begin(), ids.end());
    CHECK(ids == std::vector<std::uint32_t>{0, 1, 3});
    CHECK(neighbor_cells(GridIndex{{5, 9}, 10}, 1).size() == 9);
    CHECK(neighbor_cells(GridIndex{{1, 1}, 3}, 2).size() == 9);
    CHECK(neighbor_cells(GridIndex{{0, 0}, 2}, 1).size() == 4);
}

}
