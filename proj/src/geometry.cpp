#include <girgnav/geometry.hpp>

#include <girgnav/error.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace girgnav {

TorusPoint::TorusPoint(std::vector<double> coords) : coords_(std::move(coords)) {
    for (double c : coords_) {
        if (!(c >= 0.0 && c < 1.0)) {
            throw InvalidInput("torus coordinate outside [0, 1): " + std::to_string(c));
        }
    }
}

double torus_distance(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw InvalidInput("torus_distance: dimension mismatch");
    }
    double dist = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double delta = std::fabs(x[i] - y[i]);
        dist = std::max(dist, std::min(delta, 1.0 - delta));
    }
    return dist;
}

double torus_distance(const TorusPoint& x, const TorusPoint& y) {
    return torus_distance(x.coords(), y.coords());
}

namespace {

// k^d as a double, exact for the small values in use.
double ipow(double base, int d) {
    double result = 1.0;
    for (int i = 0; i < d; ++i) result *= base;
    return result;
}

} // namespace

std::uint32_t w_grid_cells_per_axis(double w, double n, int d) {
    if (!(w > 0.0) || !(w < n)) {
        throw InvalidInput("w-grid requires 0 < w < n");
    }
    if (d < 1) throw InvalidInput("w-grid requires d >= 1");
    const double ratio = n / w;
    auto k = static_cast<std::uint64_t>(std::floor(std::pow(ratio, 1.0 / d)));
    k = std::max<std::uint64_t>(k, 1);
    while (ipow(static_cast<double>(k + 1), d) <= ratio) ++k;
    while (k > 1 && ipow(static_cast<double>(k), d) > ratio) --k;
    if (k > 0xffffffffULL) throw InvalidInput("w-grid too fine");
    return static_cast<std::uint32_t>(k);
}

double w_grid_cell_volume(double w, double n, int d) {
    return 1.0 / ipow(static_cast<double>(w_grid_cells_per_axis(w, n, d)), d);
}

GridIndex grid_cell(const TorusPoint& x, double w, double n) {
    const std::uint32_t k = w_grid_cells_per_axis(w, n, x.dimension());
    GridIndex g;
    g.cells_per_axis = k;
    g.cell.reserve(static_cast<std::size_t>(x.dimension()));
    for (double c : x.coords()) {
        auto idx = static_cast<std::uint32_t>(std::floor(c * k));
        g.cell.push_back(std::min(idx, k - 1));
    }
    return g;
}

std::vector<GridIndex> neighbor_cells(const GridIndex& g, std::uint32_t radius_cells) {
    const std::uint32_t k = g.cells_per_axis;
    const std::size_t d = g.cell.size();

    // Per-axis candidate coordinates, deduplicated (wrap-around may coincide).
    std::vector<std::vector<std::uint32_t>> axis(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::int64_t off = -static_cast<std::int64_t>(radius_cells); off <= radius_cells; ++off) {
            std::int64_t c = (static_cast<std::int64_t>(g.cell[i]) + off) % static_cast<std::int64_t>(k);
            if (c < 0) c += k;
            axis[i].push_back(static_cast<std::uint32_t>(c));
        }
        std::sort(axis[i].begin(), axis[i].end());
        axis[i].erase(std::unique(axis[i].begin(), axis[i].end()), axis[i].end());
    }

    std::vector<GridIndex> out;
    std::vector<std::size_t> pos(d, 0);
    while (true) {
        GridIndex cell;
        cell.cells_per_axis = k;
        for (std::size_t i = 0; i < d; ++i) cell.cell.push_back(axis[i][pos[i]]);
        out.push_back(std::move(cell));
        std::size_t i = 0;
        while (i < d && ++pos[i] == axis[i].size()) {
            pos[i] = 0;
            ++i;
        }
        if (i == d) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace girgnav
