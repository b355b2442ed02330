#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "grid.hpp"
#include "grid_io.hpp"
#include "isovist_field.hpp"

namespace isoridge
{

/// Local-maximum marks over a field. true = ridge point.
class RidgeMask
{
public:
    RidgeMask() = default;
    RidgeMask(int width, int height) : marks_(width, height, 0) {}

    int width() const noexcept { return marks_.width(); }
    int height() const noexcept { return marks_.height(); }

    bool marked(int i, int j) const noexcept { return marks_.contains(i, j) && marks_(i, j) != 0; }
    void mark(int i, int j, bool on = true) { marks_(i, j) = on ? 1 : 0; }

    std::size_t count() const noexcept
    {
        std::size_t n = 0;
        for (auto m : marks_.data())
            n += m != 0 ? 1 : 0;
        return n;
    }

    /// Centres of the marked cells, bottom row first, left to right.
    std::vector<Point> points() const
    {
        std::vector<Point> out;
        for (int j = 0; j < height(); ++j)
            for (int i = 0; i < width(); ++i)
                if (marked(i, j))
                    out.push_back(cell_center(i, j));
        return out;
    }

    friend bool operator==(const RidgeMask&, const RidgeMask&) = default;

private:
    Raster<unsigned char> marks_;
};

/// Marks every defined cell whose value is >= each defined 8-neighbour.
/// Undefined and out-of-range neighbours are ignored, so plateaus are marked whole.
inline RidgeMask local_maxima(const ScalarField& field)
{
    RidgeMask mask(field.width(), field.height());
    for (int j = 0; j < field.height(); ++j)
        for (int i = 0; i < field.width(); ++i)
        {
            if (!field.defined(i, j))
                continue;
            const double v = field(i, j);
            bool peak = true;
            for (int dj = -1; dj <= 1 && peak; ++dj)
                for (int di = -1; di <= 1; ++di)
                {
                    if ((di != 0 || dj != 0) && field.defined(i + di, j + dj) && field(i + di, j + dj) > v)
                    {
                        peak = false;
                        break;
                    }
                }
            if (peak)
                mask.mark(i, j);
        }
    return mask;
}

inline RidgeMask local_maxima(const IsovistField& field)
{
    return local_maxima(field.values);
}

/// PBM dump, marked cells black.
inline std::string write_mask(const RidgeMask& mask, bool binary = false)
{
    return write_pbm(mask.width(), mask.height(), [&](int i, int j) { return mask.marked(i, j); }, binary);
}

} // namespace isoridge
