#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace girgnav {

/// A point on the d-dimensional unit torus; every coordinate lies in [0, 1).
class TorusPoint {
public:
    TorusPoint() = default;
    explicit TorusPoint(std::vector<double> coords);

    int dimension() const { return static_cast<int>(coords_.size()); }
    double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
    std::span<const double> coords() const { return coords_; }

    friend bool operator==(const TorusPoint&, const TorusPoint&) = default;

private:
    std::vector<double> coords_;
};

/// Maximum-norm distance on the torus: max_i min(|x_i - y_i|, 1 - |x_i - y_i|).
/// Throws InvalidInput on dimension mismatch.
double torus_distance(std::span<const double> x, std::span<const double> y);
double torus_distance(const TorusPoint& x, const TorusPoint& y);

/// Index of a cube in a regular partition of the torus into cells_per_axis^d cells.
struct GridIndex {
    std::vector<std::uint32_t> cell;
    std::uint32_t cells_per_axis = 1;

    friend bool operator==(const GridIndex&, const GridIndex&) = default;
    friend auto operator<=>(const GridIndex&, const GridIndex&) = default;
};

/// Number of cells per axis of the w-grid: floor((n/w)^(1/d)), computed exactly
/// in integers so that k^d <= n/w < (k+1)^d.
std::uint32_t w_grid_cells_per_axis(double w, double n, int d);

/// Volume of one w-grid cell, recomputed from the actual cell count.
double w_grid_cell_volume(double w, double n, int d);

/// Cell of the w-grid that contains x. Cells are half-open [lo, hi) per axis.
/// Throws InvalidInput unless 0 < w < n.
GridIndex grid_cell(const TorusPoint& x, double w, double n);

/// All cells within Chebyshev distance radius_cells of g on the cell torus,
/// deduplicated and sorted.
std::vector<GridIndex> neighbor_cells(const GridIndex& g, std::uint32_t radius_cells);

} // namespace girgnav
