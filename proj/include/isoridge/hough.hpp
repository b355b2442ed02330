#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "geometry.hpp"
#include "grid.hpp"
#include "parallel.hpp"

namespace isoridge
{

struct Bounds
{
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 0.0;
    double y1 = 0.0;

    static Bounds of_image(int width, int height) { return {0.0, 0.0, double(width), double(height)}; }
    Point center() const noexcept { return {(x0 + x1) / 2.0, (y0 + y1) / 2.0}; }
};

/// Normal-parameterisation Hough transform: rho = (x - ox) cos(theta) + (y - oy) sin(theta).
struct HoughConfig
{
    double theta_step = 1.0; // degrees per theta bin
    double rho_bin = 1.0;    // cell units per rho bin
    Point origin;
    Bounds image;
    int suppress_rho = 2;   // half-width, in rho bins, of the window zeroed around a peak
    int suppress_theta = 2; // half-width, in theta bins

    /// Origin at the image centre.
    static HoughConfig for_image(int width, int height)
    {
        HoughConfig c;
        c.image = Bounds::of_image(width, height);
        c.origin = c.image.center();
        return c;
    }

    /// Largest |rho| any point of the image can produce.
    double rho_max() const
    {
        double r = 0.0;
        for (double x : {image.x0, image.x1})
            for (double y : {image.y0, image.y1})
                r = std::max(r, std::hypot(x - origin.x, y - origin.y));
        return r;
    }

    void validate() const
    {
        if (!(theta_step > 0.0) || theta_step > 90.0)
            throw Error("theta_step must lie in (0, 90] degrees");
        if (!(rho_bin > 0.0))
            throw Error("rho_bin must be positive");
        if (suppress_rho < 0 || suppress_theta < 0)
            throw Error("suppression window must be non-negative");
        if (!(image.x1 > image.x0) || !(image.y1 > image.y0))
            throw Error("Hough image bounds are empty");
    }
};

struct LineParams
{
    double rho = 0.0;   // signed normal distance from the Hough origin
    double theta = 0.0; // degrees in [0, 180)
    std::uint32_t votes = 0;
    int rank = 0; // 1-based extraction order
    int rho_bin = 0;
    int theta_bin = 0;
};

class HoughAccumulator
{
public:
    HoughAccumulator() = default;

    explicit HoughAccumulator(const HoughConfig& config) : config_(config), sweep_(config.theta_step)
    {
        config.validate();
        rho_offset_ = static_cast<int>(std::ceil(config.rho_max() / config.rho_bin));
        n_rho_ = 2 * rho_offset_ + 1;
        n_theta_ = static_cast<int>(sweep_.size());
        votes_.assign(static_cast<std::size_t>(n_rho_) * static_cast<std::size_t>(n_theta_), 0);
    }

    const HoughConfig& config() const noexcept { return config_; }
    const AngleSweep& sweep() const noexcept { return sweep_; }
    int rho_bins() const noexcept { return n_rho_; }
    int theta_bins() const noexcept { return n_theta_; }
    std::size_t total_points() const noexcept { return total_points_; }

    /// True when the theta bins tile exactly half a turn, so bin n wraps to bin 0 with rho negated.
    bool wraps() const noexcept { return sweep_.divides_quarter_turn(); }

    std::uint32_t& at(int rho_bin, int theta_bin) { return votes_[slot(rho_bin, theta_bin)]; }
    std::uint32_t at(int rho_bin, int theta_bin) const { return votes_[slot(rho_bin, theta_bin)]; }

    double rho_of(int rho_bin) const noexcept { return (rho_bin - rho_offset_) * config_.rho_bin; }
    double theta_of(int theta_bin) const noexcept { return sweep_.degrees(static_cast<std::size_t>(theta_bin)); }

    /// Nearest rho bin for a rho value, or -1 when it falls outside the range.
    int rho_bin_of(double rho) const noexcept
    {
        const long b = std::lround(rho / config_.rho_bin) + rho_offset_;
        return (b < 0 || b >= n_rho_) ? -1 : static_cast<int>(b);
    }

    /// Bin holding the same line as (rho_bin) under theta -> theta + 180.
    int mirrored_rho_bin(int rho_bin) const noexcept { return 2 * rho_offset_ - rho_bin; }

    std::uint64_t column_sum(int theta_bin) const
    {
        std::uint64_t s = 0;
        for (int r = 0; r < n_rho_; ++r)
            s += at(r, theta_bin);
        return s;
    }

    std::uint32_t max_votes() const
    {
        return votes_.empty() ? 0 : *std::max_element(votes_.begin(), votes_.end());
    }

    bool empty() const noexcept
    {
        return std::all_of(votes_.begin(), votes_.end(), [](std::uint32_t v) { return v == 0; });
    }

    void set_total_points(std::size_t n) noexcept { total_points_ = n; }

    HoughAccumulator& operator+=(const HoughAccumulator& other)
    {
        for (std::size_t k = 0; k < votes_.size(); ++k)
            votes_[k] += other.votes_[k];
        total_points_ += other.total_points_;
        return *this;
    }

    friend bool operator==(const HoughAccumulator& a, const HoughAccumulator& b)
    {
        return a.n_rho_ == b.n_rho_ && a.n_theta_ == b.n_theta_ && a.votes_ == b.votes_ &&
               a.total_points_ == b.total_points_;
    }

private:
    std::size_t slot(int rho_bin, int theta_bin) const noexcept
    {
        return static_cast<std::size_t>(rho_bin) * static_cast<std::size_t>(n_theta_) +
               static_cast<std::size_t>(theta_bin);
    }

    HoughConfig config_;
    AngleSweep sweep_{1.0};
    int rho_offset_ = 0;
    int n_rho_ = 0;
    int n_theta_ = 0;
    std::size_t total_points_ = 0;
    std::vector<std::uint32_t> votes_;
};

struct SinusoidSample
{
    int theta_bin;
    double theta; // degrees
    double rho;
};

/// rho of `point` at every theta bin centre.
inline std::vector<SinusoidSample> point_to_sinusoid(Point point, const HoughConfig& config)
{
    config.validate();
    const AngleSweep sweep(config.theta_step);
    const double x = point.x - config.origin.x;
    const double y = point.y - config.origin.y;
    std::vector<SinusoidSample> out;
    out.reserve(sweep.size());
    for (std::size_t k = 0; k < sweep.size(); ++k)
    {
        const Direction n = sweep.direction(k);
        out.push_back({static_cast<int>(k), sweep.degrees(k), x * n.dx + y * n.dy});
    }
    return out;
}

/// Every point casts one vote in every theta column, at its nearest rho bin.
/// Points are split over `workers` private accumulators that are summed at the end.
inline HoughAccumulator hough_transform(const std::vector<Point>& points, const HoughConfig& config,
                                        unsigned workers = 0)
{
    if (points.empty())
        throw Error("Hough transform of an empty point set");
    HoughAccumulator acc(config);
    const int n_theta = acc.theta_bins();
    std::vector<Direction> normals(static_cast<std::size_t>(n_theta));
    for (int t = 0; t < n_theta; ++t)
        normals[static_cast<std::size_t>(t)] = acc.sweep().direction(static_cast<std::size_t>(t));

    if (workers == 0)
        workers = default_workers();
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, points.size()));
    std::vector<HoughAccumulator> partial(workers, HoughAccumulator(config));

    const std::size_t grain = std::max<std::size_t>(64, points.size() / (8 * workers) + 1);
    parallel_for(points.size(), workers, grain, [&](std::size_t k, unsigned worker) {
        HoughAccumulator& mine = partial[worker];
        const double x = points[k].x - config.origin.x;
        const double y = points[k].y - config.origin.y;
        for (int t = 0; t < n_theta; ++t)
        {
            const Direction& n = normals[static_cast<std::size_t>(t)];
            const int r = mine.rho_bin_of(x * n.dx + y * n.dy);
            if (r < 0)
                throw Error("point lies outside the Hough image bounds");
            ++mine.at(r, t);
        }
    });

    for (const auto& p : partial)
        acc += p;
    acc.set_total_points(points.size());
    return acc;
}

/// Zeros the suppression window around (rho_bin, theta_bin). Windows crossing
/// theta = 0 or 180 continue on the other side with rho negated.
inline void suppress_peak(HoughAccumulator& acc, int rho_bin, int theta_bin)
{
    const auto& c = acc.config();
    for (int dt = -c.suppress_theta; dt <= c.suppress_theta; ++dt)
    {
        int t = theta_bin + dt;
        bool mirrored = false;
        if (t < 0 || t >= acc.theta_bins())
        {
            if (!acc.wraps())
                continue;
            t = t < 0 ? t + acc.theta_bins() : t - acc.theta_bins();
            mirrored = true;
            if (t < 0 || t >= acc.theta_bins())
                continue;
        }
        for (int dr = -c.suppress_rho; dr <= c.suppress_rho; ++dr)
        {
            int r = rho_bin + dr;
            if (mirrored)
                r = acc.mirrored_rho_bin(r);
            if (r >= 0 && r < acc.rho_bins())
                acc.at(r, t) = 0;
        }
    }
}

/// Removes and returns the strongest remaining bin. Ties go to the smaller
/// theta bin, then the smaller rho bin. Empty once every bin is zero.
inline std::optional<LineParams> extract_peak(HoughAccumulator& acc)
{
    std::uint32_t best = 0;
    int best_r = -1;
    int best_t = -1;
    for (int t = 0; t < acc.theta_bins(); ++t)
        for (int r = 0; r < acc.rho_bins(); ++r)
            if (acc.at(r, t) > best)
            {
                best = acc.at(r, t);
                best_r = r;
                best_t = t;
            }
    if (best == 0)
        return std::nullopt;
    suppress_peak(acc, best_r, best_t);
    return LineParams{acc.rho_of(best_r), acc.theta_of(best_t), best, 0, best_r, best_t};
}

/// Up to k lines in decreasing vote order; fewer when the accumulator runs dry.
inline std::vector<LineParams> rank_peaks(HoughAccumulator acc, int k)
{
    if (k < 1)
        throw Error("number of peaks must be at least 1");
    std::vector<LineParams> lines;
    while (static_cast<int>(lines.size()) < k)
    {
        auto peak = extract_peak(acc);
        if (!peak)
            break;
        peak->rank = static_cast<int>(lines.size()) + 1;
        lines.push_back(*peak);
    }
    return lines;
}

struct Segment
{
    Point a;
    Point b;

    double length() const noexcept { return std::hypot(b.x - a.x, b.y - a.y); }
};

/// Clips the line (p - origin) . (cos theta, sin theta) = rho to `bounds`.
/// Returns nothing when the line misses the rectangle or only touches a corner.
inline std::optional<Segment> invert_line(const LineParams& params, const HoughConfig& config, const Bounds& bounds)
{
    const Direction n = direction_from_degrees(params.theta);
    const Point foot{config.origin.x + params.rho * n.dx, config.origin.y + params.rho * n.dy};
    const Direction u{-n.dy, n.dx};

    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    auto clip = [&](double p, double d, double min, double max) {
        if (d == 0.0)
            return p >= min && p <= max;
        double t0 = (min - p) / d;
        double t1 = (max - p) / d;
        if (t0 > t1)
            std::swap(t0, t1);
        lo = std::max(lo, t0);
        hi = std::min(hi, t1);
        return true;
    };
    if (!clip(foot.x, u.dx, bounds.x0, bounds.x1) || !clip(foot.y, u.dy, bounds.y0, bounds.y1))
        return std::nullopt;
    if (!(hi - lo > 1e-9))
        return std::nullopt;

    auto at = [&](double t) {
        return Point{std::clamp(foot.x + t * u.dx, bounds.x0, bounds.x1),
                     std::clamp(foot.y + t * u.dy, bounds.y0, bounds.y1)};
    };
    Segment s{at(lo), at(hi)};
    if (std::pair(s.b.x, s.b.y) < std::pair(s.a.x, s.a.y))
        std::swap(s.a, s.b);
    return s;
}

inline std::optional<Segment> invert_line(const LineParams& params, const HoughConfig& config)
{
    return invert_line(params, config, config.image);
}

} // namespace isoridge
