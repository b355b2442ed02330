#pragma once

// Brute-force references for the isovist kernel. Nothing here walks the grid:
// every ray is intersected with every obstacle square, every blocking lattice
// corner and the outer frame, and the nearest hit wins.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "error.hpp"
#include "geometry.hpp"
#include "grid.hpp"

namespace isoridge::oracle
{

enum class GeometryMode
{
    SegmentIntersection,
};

struct OracleConfig
{
    double dense_angle_step = 0.001; // degrees
    GeometryMode geometry_mode = GeometryMode::SegmentIntersection;
};

inline constexpr double parameter_epsilon = 1e-12;

/// Obstacle squares and blocking corners of a grid, sorted by their distance
/// from one origin so a ray query can stop once no candidate can beat the best hit.
class Scene
{
public:
    Scene(const OccupancyGrid& grid, Point origin) : origin_(origin), width_(grid.width()), height_(grid.height())
    {
        if (!(origin.x > 0.0 && origin.y > 0.0 && origin.x < width_ && origin.y < height_))
            throw Error("oracle origin lies outside the grid");
        const int ci = static_cast<int>(std::floor(origin.x));
        const int cj = static_cast<int>(std::floor(origin.y));
        if (origin.x == ci || origin.y == cj)
            throw Error("oracle origin lies on a cell boundary");
        if (grid.is_obstacle(ci, cj))
            throw Error("oracle origin lies inside an obstacle cell");

        for (int j = 0; j < height_; ++j)
            for (int i = 0; i < width_; ++i)
                if (grid.is_obstacle(i, j))
                {
                    const double gx = std::max({0.0, i - origin.x, origin.x - (i + 1)});
                    const double gy = std::max({0.0, j - origin.y, origin.y - (j + 1)});
                    items_.push_back({std::hypot(gx, gy), Kind::Square, i, j});
                }

        // Interior lattice corners whose two diagonal neighbour pairs include a
        // fully blocked pair: a ray may not squeeze through them.
        for (int y = 1; y < height_; ++y)
            for (int x = 1; x < width_; ++x)
            {
                const bool rising = grid.is_obstacle(x - 1, y - 1) && grid.is_obstacle(x, y);
                const bool falling = grid.is_obstacle(x - 1, y) && grid.is_obstacle(x, y - 1);
                if (rising || falling)
                    items_.push_back({std::hypot(x - origin.x, y - origin.y), Kind::Corner, x, y});
            }

        std::sort(items_.begin(), items_.end(), [](const Item& a, const Item& b) { return a.distance < b.distance; });
    }

    /// First-hit distance along unit direction d.
    double cast(Direction d) const
    {
        constexpr double inf = std::numeric_limits<double>::infinity();
        const Point o = origin_;

        // Outer frame.
        double best = inf;
        if (d.dx > 0.0)
            best = std::min(best, (static_cast<double>(width_) - o.x) / d.dx);
        else if (d.dx < 0.0)
            best = std::min(best, (0.0 - o.x) / d.dx);
        if (d.dy > 0.0)
            best = std::min(best, (static_cast<double>(height_) - o.y) / d.dy);
        else if (d.dy < 0.0)
            best = std::min(best, (0.0 - o.y) / d.dy);

        for (const Item& item : items_)
        {
            if (item.distance > best)
                break;
            if (item.kind == Kind::Square)
            {
                double lo = -inf;
                double hi = inf;
                if (!slab(o.x, d.dx, item.a, lo, hi) || !slab(o.y, d.dy, item.b, lo, hi))
                    continue;
                if (hi - lo > parameter_epsilon && lo > 0.0)
                    best = std::min(best, lo);
            }
            else
            {
                if (d.dx == 0.0 || d.dy == 0.0)
                    continue;
                const double tx = (static_cast<double>(item.a) - o.x) / d.dx;
                const double ty = (static_cast<double>(item.b) - o.y) / d.dy;
                const double t = std::min(tx, ty);
                if (std::abs(tx - ty) <= parameter_epsilon && t > 0.0)
                    best = std::min(best, t);
            }
        }
        return best;
    }

private:
    enum class Kind
    {
        Square,
        Corner
    };

    struct Item
    {
        double distance;
        Kind kind;
        int a; // square: (i, j); corner: lattice point (x, y)
        int b;
    };

    // Intersects [lo, hi] with the parameter range where o + t*d lies in [k, k+1].
    static bool slab(double o, double d, int k, double& lo, double& hi)
    {
        if (d == 0.0)
            return o > k && o < k + 1;
        double t0 = (static_cast<double>(k) - o) / d;
        double t1 = (static_cast<double>(k + 1) - o) / d;
        if (t0 > t1)
            std::swap(t0, t1);
        lo = std::max(lo, t0);
        hi = std::min(hi, t1);
        return true;
    }

    Point origin_;
    int width_;
    int height_;
    std::vector<Item> items_;
};

inline double oracle_ray_length(const OccupancyGrid& grid, Point origin, double theta_degrees)
{
    return Scene(grid, origin).cast(direction_from_degrees(theta_degrees));
}

/// Dense-sweep evaluation of the maximum diametric length at the centre of `cell`.
inline double oracle_delta_max(const OccupancyGrid& grid, CellIndex cell, const OracleConfig& config = {})
{
    if (grid.is_obstacle(cell.i, cell.j))
        throw Error("cell (" + std::to_string(cell.i) + ", " + std::to_string(cell.j) + ") is not open space");
    const AngleSweep sweep(config.dense_angle_step);
    const Scene scene(grid, cell_center(cell.i, cell.j));
    double best = 0.0;
    for (std::size_t k = 0; k < sweep.size(); ++k)
    {
        const Direction d = sweep.direction(k);
        best = std::max(best, scene.cast(d) + scene.cast(d.reversed()));
    }
    return best;
}

} // namespace isoridge::oracle
