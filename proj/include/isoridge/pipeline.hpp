#pragma once

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "grid.hpp"
#include "hough.hpp"
#include "isovist_field.hpp"
#include "ridge_detect.hpp"

namespace isoridge
{

enum class Artifact
{
    Csv,
    GeoJson,
    Svg,
    FieldPgm,
    MaskPbm,
    AccumulatorPgm,
};

struct PipelineConfig
{
    FieldConfig field;
    double theta_step = 1.0;
    double rho_bin = 1.0;
    int suppress_rho = 2;
    int suppress_theta = 2;
    int num_lines = 6;
    double min_length = 0.0;
    std::set<Artifact> emit{Artifact::Csv};
    bool clip_to_open = false; // extension: also report the longest open-space run of each line
    unsigned workers = 0;      // 0 = hardware concurrency

    void validate() const
    {
        if (num_lines < 1)
            throw Error("num_lines must be at least 1");
        if (!(min_length >= 0.0))
            throw Error("min_length must be non-negative");
    }

    HoughConfig hough_for(const OccupancyGrid& grid) const
    {
        HoughConfig h = HoughConfig::for_image(grid.width(), grid.height());
        h.theta_step = theta_step;
        h.rho_bin = rho_bin;
        h.suppress_rho = suppress_rho;
        h.suppress_theta = suppress_theta;
        return h;
    }
};

struct AxialLine
{
    LineParams params;
    Segment segment;
    double length = 0.0;
    std::optional<Segment> open_run; // set only when clip_to_open is requested
};

struct PipelineResult
{
    IsovistField field;
    RidgeMask mask;
    HoughConfig hough;
    HoughAccumulator accumulator; // before peak extraction
    std::vector<AxialLine> lines;
    std::vector<LineParams> skipped; // peaks whose line misses the image
};

/// Longest stretch of `segment` lying in open space, found by splitting the
/// segment at every cell face it crosses. Empty if no part of it is open.
inline std::optional<Segment> longest_open_run(const OccupancyGrid& grid, const Segment& segment)
{
    const double dx = segment.b.x - segment.a.x;
    const double dy = segment.b.y - segment.a.y;
    std::vector<double> cuts{0.0, 1.0};
    auto add_crossings = [&](double from, double delta, int limit) {
        if (delta == 0.0)
            return;
        for (int k = 0; k <= limit; ++k)
        {
            const double t = (k - from) / delta;
            if (t > 0.0 && t < 1.0)
                cuts.push_back(t);
        }
    };
    add_crossings(segment.a.x, dx, grid.width());
    add_crossings(segment.a.y, dy, grid.height());
    std::sort(cuts.begin(), cuts.end());

    std::optional<Segment> best;
    double run_start = -1.0;
    auto point_at = [&](double t) { return Point{segment.a.x + t * dx, segment.a.y + t * dy}; };
    auto close_run = [&](double run_end) {
        const Segment s{point_at(run_start), point_at(run_end)};
        if (s.length() > 0.0 && (!best || s.length() > best->length()))
            best = s;
        run_start = -1.0;
    };
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
    {
        const double t0 = cuts[k], t1 = cuts[k + 1];
        if (t1 - t0 <= 1e-12)
            continue;
        const Point mid = point_at((t0 + t1) / 2.0);
        const bool open = grid.is_open(static_cast<int>(std::floor(mid.x)), static_cast<int>(std::floor(mid.y)));
        if (open && run_start < 0.0)
            run_start = t0;
        else if (!open && run_start >= 0.0)
            close_run(t0);
    }
    if (run_start >= 0.0)
        close_run(1.0);
    return best;
}

/// Width of the narrowest street: the smallest, over open cells, of the
/// shorter of the horizontal and vertical open chords through the cell centre.
/// At a street's centreline this is twice the axis distance to the nearest
/// obstacle. Grid edges count as obstacles.
inline double estimate_narrowest_street(const OccupancyGrid& grid)
{
    const int w = grid.width(), h = grid.height();
    Raster<int> left(w, h), right(w, h), down(w, h), up(w, h);
    for (int j = 0; j < h; ++j)
    {
        for (int i = 0, run = 0; i < w; ++i)
            left(i, j) = run = grid.is_open(i, j) ? run + 1 : 0;
        for (int i = w - 1, run = 0; i >= 0; --i)
            right(i, j) = run = grid.is_open(i, j) ? run + 1 : 0;
    }
    for (int i = 0; i < w; ++i)
    {
        for (int j = 0, run = 0; j < h; ++j)
            down(i, j) = run = grid.is_open(i, j) ? run + 1 : 0;
        for (int j = h - 1, run = 0; j >= 0; --j)
            up(i, j) = run = grid.is_open(i, j) ? run + 1 : 0;
    }
    int best = std::numeric_limits<int>::max();
    for (int j = 0; j < h; ++j)
        for (int i = 0; i < w; ++i)
            if (grid.is_open(i, j))
                best = std::min({best, left(i, j) + right(i, j) - 1, down(i, j) + up(i, j) - 1});
    if (best == std::numeric_limits<int>::max())
        throw Error("grid has no open cells");
    return static_cast<double>(best);
}

/// Keeps lines at least `min_length` long, in their original order.
inline std::vector<AxialLine> apply_length_threshold(const std::vector<AxialLine>& lines, double min_length)
{
    std::vector<AxialLine> kept;
    std::copy_if(lines.begin(), lines.end(), std::back_inserter(kept),
                 [&](const AxialLine& l) { return !(l.length < min_length); });
    return kept;
}

/// Field, ridge points, Hough votes and ranked peaks, with each peak clipped to
/// the image. Peaks whose line misses the image are set aside and do not take
/// a rank. The length threshold is not applied here.
inline PipelineResult extract_axial_lines(const OccupancyGrid& grid, const PipelineConfig& config)
{
    config.validate();
    if (grid.open_count() == 0)
        throw Error("grid has no open cells");

    PipelineResult result;
    result.field = compute_field(grid, config.field, config.workers);
    result.mask = local_maxima(result.field);
    const auto points = result.mask.points();
    if (points.empty())
        throw Error("field has no ridge points");

    result.hough = config.hough_for(grid);
    result.accumulator = hough_transform(points, result.hough, config.workers);

    HoughAccumulator remaining = result.accumulator;
    while (static_cast<int>(result.lines.size()) < config.num_lines)
    {
        auto peak = extract_peak(remaining);
        if (!peak)
            break;
        const auto segment = invert_line(*peak, result.hough);
        if (!segment)
        {
            result.skipped.push_back(*peak);
            continue;
        }
        peak->rank = static_cast<int>(result.lines.size()) + 1;
        AxialLine line{*peak, *segment, segment->length(), std::nullopt};
        if (config.clip_to_open)
            line.open_run = longest_open_run(grid, *segment);
        result.lines.push_back(line);
    }
    return result;
}

} // namespace isoridge
