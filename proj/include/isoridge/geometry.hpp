#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

#include "error.hpp"

namespace isoridge
{

struct Direction
{
    double dx = 1.0;
    double dy = 0.0;

    Direction reversed() const noexcept { return {-dx, -dy}; }
};

namespace detail
{

// (cos a, sin a) for a in [0, 90] given as a fraction of the quarter turn.
// Angles past 45 are evaluated through their complement so that mirrored
// angles produce exactly swapped components.
inline Direction quarter_direction(double fraction_num, double fraction_den)
{
    if (2.0 * fraction_num == fraction_den)
    {
        const double h = std::sqrt(0.5);
        return {h, h};
    }
    if (2.0 * fraction_num < fraction_den)
    {
        const double a = (fraction_num / fraction_den) * (std::numbers::pi / 2.0);
        return {std::cos(a), std::sin(a)};
    }
    const double a = ((fraction_den - fraction_num) / fraction_den) * (std::numbers::pi / 2.0);
    return {std::sin(a), std::cos(a)};
}

inline Direction rotate_quadrants(Direction d, int quadrants)
{
    switch (((quadrants % 4) + 4) % 4)
    {
    case 1: return {-d.dy, d.dx};
    case 2: return {-d.dx, -d.dy};
    case 3: return {d.dy, -d.dx};
    default: return d;
    }
}

} // namespace detail

/// Unit vector for an angle in degrees measured counter-clockwise from +x.
/// Multiples of 45 degrees are exact, and the result is exactly symmetric
/// under the eight symmetries of the square.
inline Direction direction_from_degrees(double degrees)
{
    double t = std::fmod(degrees, 360.0);
    if (t < 0.0)
        t += 360.0;
    const int quadrant = static_cast<int>(t / 90.0);
    const double r = t - 90.0 * quadrant;
    return detail::rotate_quadrants(detail::quarter_direction(r, 90.0), quadrant);
}

/// Sampled half-turn sweep theta_k = k * step, k = 0, 1, ... while theta_k < 180.
///
/// When the step divides 90 degrees the k-th direction is derived from the
/// exact fraction k / (90 / step), so sweeps whose steps are integer multiples
/// of one another yield bit-identical directions on their shared angles.
class AngleSweep
{
public:
    explicit AngleSweep(double step_degrees) : step_(step_degrees)
    {
        if (!(step_degrees > 0.0) || step_degrees > 90.0)
            throw Error("angle step must lie in (0, 90] degrees");
        const double n = std::round(90.0 / step_degrees);
        if (n >= 1.0 && std::abs(n * step_degrees - 90.0) <= 1e-9 * 90.0)
        {
            per_quadrant_ = static_cast<std::size_t>(n);
            count_ = 2 * per_quadrant_;
        }
        else
        {
            count_ = static_cast<std::size_t>(std::ceil(180.0 / step_degrees));
            while (count_ > 0 && static_cast<double>(count_ - 1) * step_degrees >= 180.0)
                --count_;
        }
    }

    double step() const noexcept { return step_; }
    std::size_t size() const noexcept { return count_; }
    bool divides_quarter_turn() const noexcept { return per_quadrant_ != 0; }

    double degrees(std::size_t k) const noexcept
    {
        if (per_quadrant_ != 0 && static_cast<double>(per_quadrant_) * step_ != 90.0)
            return 90.0 * (static_cast<double>(k) / static_cast<double>(per_quadrant_));
        return static_cast<double>(k) * step_;
    }

    Direction direction(std::size_t k) const noexcept
    {
        if (per_quadrant_ == 0)
            return direction_from_degrees(static_cast<double>(k) * step_);
        const std::size_t quadrant = k / per_quadrant_;
        const std::size_t m = k % per_quadrant_;
        return detail::rotate_quadrants(
            detail::quarter_direction(static_cast<double>(m), static_cast<double>(per_quadrant_)),
            static_cast<int>(quadrant));
    }

private:
    double step_;
    std::size_t per_quadrant_ = 0;
    std::size_t count_ = 0;
};

} // namespace isoridge
