#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "error.hpp"

namespace isoridge
{

/// Continuous image-plane point. Cell (i, j) covers [i, i+1] x [j, j+1], y up.
struct Point
{
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline Point cell_center(int i, int j)
{
    return {i + 0.5, j + 0.5};
}

struct CellIndex
{
    int i = 0;
    int j = 0;

    friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

/// Row-major 2D array with (i, j) addressing, j = 0 being the bottom row.
template <typename T>
class Raster
{
public:
    Raster() = default;

    Raster(int width, int height, T fill = T{})
        : width_(width), height_(height)
    {
        if (width < 1 || height < 1)
            throw Error("raster dimensions must be positive");
        data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }

    bool contains(int i, int j) const noexcept
    {
        return i >= 0 && j >= 0 && i < width_ && j < height_;
    }

    std::size_t index(int i, int j) const noexcept
    {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(i);
    }

    decltype(auto) operator()(int i, int j) { return data_[index(i, j)]; }
    decltype(auto) operator()(int i, int j) const { return data_[index(i, j)]; }

    const std::vector<T>& data() const noexcept { return data_; }
    std::vector<T>& data() noexcept { return data_; }

    friend bool operator==(const Raster&, const Raster&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

/// Binary raster of open space. true = obstacle, false = open.
/// Everything outside [0,width] x [0,height] behaves as obstacle.
class OccupancyGrid
{
public:
    OccupancyGrid() = default;
    OccupancyGrid(int width, int height, bool obstacle = false)
        : cells_(width, height, obstacle ? 1 : 0)
    {
    }

    int width() const noexcept { return cells_.width(); }
    int height() const noexcept { return cells_.height(); }

    bool is_obstacle(int i, int j) const noexcept
    {
        return !cells_.contains(i, j) || cells_(i, j) != 0;
    }
    bool is_open(int i, int j) const noexcept { return !is_obstacle(i, j); }

    void set_obstacle(int i, int j, bool obstacle = true) { cells_(i, j) = obstacle ? 1 : 0; }

    std::size_t open_count() const noexcept
    {
        std::size_t n = 0;
        for (auto c : cells_.data())
            n += c == 0 ? 1 : 0;
        return n;
    }

    const Raster<unsigned char>& cells() const noexcept { return cells_; }

    friend bool operator==(const OccupancyGrid&, const OccupancyGrid&) = default;

private:
    Raster<unsigned char> cells_;
};

/// Per-cell scalar in cell units; obstacle cells hold the undefined sentinel (NaN).
class ScalarField
{
public:
    static constexpr double undefined = std::numeric_limits<double>::quiet_NaN();

    ScalarField() = default;
    ScalarField(int width, int height) : values_(width, height, undefined) {}

    int width() const noexcept { return values_.width(); }
    int height() const noexcept { return values_.height(); }

    bool defined(int i, int j) const noexcept
    {
        return values_.contains(i, j) && !std::isnan(values_(i, j));
    }

    double operator()(int i, int j) const { return values_(i, j); }
    double& operator()(int i, int j) { return values_(i, j); }

    const Raster<double>& values() const noexcept { return values_; }

    /// Largest defined value, 0 when nothing is defined.
    double max_value() const noexcept
    {
        double m = 0.0;
        for (double v : values_.data())
            if (!std::isnan(v) && v > m)
                m = v;
        return m;
    }

    /// Bitwise comparison, NaN sentinels compare equal to each other.
    bool identical(const ScalarField& other) const noexcept
    {
        if (width() != other.width() || height() != other.height())
            return false;
        const auto& a = values_.data();
        const auto& b = other.values_.data();
        for (std::size_t k = 0; k < a.size(); ++k)
        {
            if (std::isnan(a[k]) != std::isnan(b[k]))
                return false;
            if (!std::isnan(a[k]) && a[k] != b[k])
                return false;
        }
        return true;
    }

private:
    Raster<double> values_;
};

} // namespace isoridge
