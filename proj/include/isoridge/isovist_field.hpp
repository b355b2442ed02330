#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "error.hpp"
#include "geometry.hpp"
#include "grid.hpp"
#include "parallel.hpp"

namespace isoridge
{

enum class RayMode
{
    ExactTraversal,
};

struct FieldConfig
{
    double angle_step = 0.1; // degrees
    RayMode ray_mode = RayMode::ExactTraversal;
};

struct IsovistField
{
    ScalarField values;
    FieldConfig config;
};

/// Two face-crossing parameters closer than this count as a lattice-corner crossing.
inline constexpr double corner_epsilon = 1e-12;

/// Walks rays cell by cell through an occupancy grid, stopping at the first
/// obstacle face or at the grid boundary. The grid is copied into a buffer
/// with a one-cell obstacle frame so the inner loop needs no bounds checks.
///
/// A ray through a lattice corner is stopped there when both cells flanking
/// the corner across the ray are obstacles, even if the cell diagonally ahead
/// is open.
class RayCaster
{
public:
    explicit RayCaster(const OccupancyGrid& grid)
        : width_(grid.width()), height_(grid.height()), stride_(grid.width() + 2),
          solid_(static_cast<std::size_t>(grid.width() + 2) * static_cast<std::size_t>(grid.height() + 2), 1)
    {
        for (int j = 0; j < height_; ++j)
            for (int i = 0; i < width_; ++i)
                solid_[slot(i, j)] = grid.is_obstacle(i, j) ? 1 : 0;
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }

    bool blocked(int i, int j) const noexcept { return solid_[slot(i, j)] != 0; }

    /// Distance from `origin` along unit direction `d` to the first blocking face.
    /// `origin` must lie inside the open cell (ci, cj).
    double cast(Point origin, Direction d, int ci, int cj) const noexcept
    {
        constexpr double inf = std::numeric_limits<double>::infinity();
        const int sx = d.dx > 0.0 ? 1 : (d.dx < 0.0 ? -1 : 0);
        const int sy = d.dy > 0.0 ? 1 : (d.dy < 0.0 ? -1 : 0);

        auto face_x = [&](int i) { return sx != 0 ? (static_cast<double>(sx > 0 ? i + 1 : i) - origin.x) / d.dx : inf; };
        auto face_y = [&](int j) { return sy != 0 ? (static_cast<double>(sy > 0 ? j + 1 : j) - origin.y) / d.dy : inf; };

        double tx = face_x(ci);
        double ty = face_y(cj);
        for (;;)
        {
            if (std::abs(tx - ty) <= corner_epsilon)
            {
                const bool out_x = ci + sx < 0 || ci + sx >= width_;
                const bool out_y = cj + sy < 0 || cj + sy >= height_;
                const bool side_x = blocked(ci + sx, cj);
                const bool side_y = blocked(ci, cj + sy);
                double hit = inf;
                if (side_x && side_y)
                    hit = std::min(tx, ty);
                if (out_x)
                    hit = std::min(hit, tx);
                if (out_y)
                    hit = std::min(hit, ty);
                if (blocked(ci + sx, cj + sy))
                    hit = std::min(hit, std::max(tx, ty));
                if (hit < inf)
                    return hit;
                ci += sx;
                cj += sy;
                tx = face_x(ci);
                ty = face_y(cj);
            }
            else if (tx < ty)
            {
                if (blocked(ci + sx, cj))
                    return tx;
                ci += sx;
                tx = face_x(ci);
            }
            else
            {
                if (blocked(ci, cj + sy))
                    return ty;
                cj += sy;
                ty = face_y(cj);
            }
        }
    }

private:
    std::size_t slot(int i, int j) const noexcept
    {
        return static_cast<std::size_t>(j + 1) * static_cast<std::size_t>(stride_) + static_cast<std::size_t>(i + 1);
    }

    int width_;
    int height_;
    int stride_;
    std::vector<unsigned char> solid_;
};

namespace detail
{

inline CellIndex open_cell_of(const OccupancyGrid& grid, Point origin)
{
    if (!(origin.x > 0.0 && origin.y > 0.0 && origin.x < grid.width() && origin.y < grid.height()))
        throw Error("ray origin lies outside the grid");
    const CellIndex c{static_cast<int>(std::floor(origin.x)), static_cast<int>(std::floor(origin.y))};
    if (origin.x == c.i || origin.y == c.j)
        throw Error("ray origin lies on a cell boundary");
    if (grid.is_obstacle(c.i, c.j))
        throw Error("ray origin lies inside an obstacle cell");
    return c;
}

inline void check_field_config(const FieldConfig& config)
{
    if (!(config.angle_step > 0.0) || config.angle_step > 90.0)
        throw Error("angle_step must lie in (0, 90] degrees");
}

inline double diametric_max(const RayCaster& caster, const std::vector<Direction>& directions, int i, int j)
{
    const Point o = cell_center(i, j);
    double best = 0.0;
    for (const Direction& d : directions)
    {
        const double chord = caster.cast(o, d, i, j) + caster.cast(o, d.reversed(), i, j);
        if (chord > best)
            best = chord;
    }
    return best;
}

inline std::vector<Direction> sweep_directions(const FieldConfig& config)
{
    const AngleSweep sweep(config.angle_step);
    std::vector<Direction> dirs(sweep.size());
    for (std::size_t k = 0; k < dirs.size(); ++k)
        dirs[k] = sweep.direction(k);
    return dirs;
}

} // namespace detail

/// Length of the line of sight from `origin` at `theta_degrees` (counter-clockwise from +x).
inline double ray_length(const OccupancyGrid& grid, Point origin, double theta_degrees)
{
    const CellIndex c = detail::open_cell_of(grid, origin);
    const RayCaster caster(grid);
    return caster.cast(origin, direction_from_degrees(theta_degrees), c.i, c.j);
}

/// Largest sum of the two opposite sight lines through the centre of cell
/// (i, j) over the sampled half-turn sweep.
inline double max_diametric_length(const OccupancyGrid& grid, CellIndex cell, const FieldConfig& config)
{
    detail::check_field_config(config);
    if (grid.is_obstacle(cell.i, cell.j))
        throw Error("cell (" + std::to_string(cell.i) + ", " + std::to_string(cell.j) + ") is not open space");
    const RayCaster caster(grid);
    return detail::diametric_max(caster, detail::sweep_directions(config), cell.i, cell.j);
}

/// Maximum diametric length at every open cell. Cells are evaluated
/// independently on `workers` threads (0 = hardware concurrency); the result
/// does not depend on the worker count.
inline IsovistField compute_field(const OccupancyGrid& grid, const FieldConfig& config, unsigned workers = 0)
{
    detail::check_field_config(config);
    const RayCaster caster(grid);
    const auto directions = detail::sweep_directions(config);

    std::vector<CellIndex> open;
    open.reserve(grid.open_count());
    for (int j = 0; j < grid.height(); ++j)
        for (int i = 0; i < grid.width(); ++i)
            if (grid.is_open(i, j))
                open.push_back({i, j});

    IsovistField field{ScalarField(grid.width(), grid.height()), config};
    parallel_for(open.size(), workers, 8, [&](std::size_t k, unsigned) {
        const CellIndex c = open[k];
        field.values(c.i, c.j) = detail::diametric_max(caster, directions, c.i, c.j);
    });
    return field;
}

} // namespace isoridge
