#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <isoridge/grid_io.hpp>
#include <isoridge/isovist_field.hpp>
#include <isoridge/reference_oracle.hpp>

#include "test_support.hpp"

namespace isoridge
{
namespace
{

// Frozen from oracle::oracle_delta_max(generate_corridor(9, 1), {5, 1}, {0.001});
// the supremum is the corridor diagonal hypot(9, 1) = 9.0553851...
constexpr double corridor_oracle_delta_max = 9.055381770997283;

TEST(RayLength, StraightRunToBoundary)
{
    const OccupancyGrid g(11, 11);
    EXPECT_DOUBLE_EQ(ray_length(g, {5.5, 5.5}, 0.0), 5.5);
    EXPECT_DOUBLE_EQ(ray_length(g, {5.5, 5.5}, 90.0), 5.5);
    EXPECT_DOUBLE_EQ(ray_length(g, {5.5, 5.5}, 180.0), 5.5);
    EXPECT_DOUBLE_EQ(ray_length(g, {5.5, 5.5}, 270.0), 5.5);
}

TEST(RayLength, DiagonalToCorner)
{
    const OccupancyGrid g(11, 11);
    EXPECT_NEAR(ray_length(g, {5.5, 5.5}, 45.0), 5.5 * std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(ray_length(g, {5.5, 5.5}, 225.0), 5.5 * std::sqrt(2.0), 1e-12);
}

TEST(RayLength, AdjacentBlockerStopsAtFace)
{
    OccupancyGrid g(11, 11);
    g.set_obstacle(6, 5);
    EXPECT_DOUBLE_EQ(ray_length(g, {5.5, 5.5}, 0.0), 0.5);
}

TEST(RayLength, BlockedAtCornerBetweenDiagonalObstacles)
{
    OccupancyGrid g(5, 5);
    g.set_obstacle(3, 2);
    g.set_obstacle(2, 3);
    // From (2.5, 2.5) at 45 degrees the ray meets lattice corner (3, 3) flanked by both.
    EXPECT_NEAR(ray_length(g, {2.5, 2.5}, 45.0), std::sqrt(0.5), 1e-12);

    // One flanking obstacle only: the ray grazes the corner and continues.
    g.set_obstacle(2, 3, false);
    EXPECT_NEAR(ray_length(g, {2.5, 2.5}, 45.0), 2.5 * std::sqrt(2.0), 1e-12);
}

TEST(RayLength, RejectsBadOrigins)
{
    OccupancyGrid g(4, 4);
    g.set_obstacle(1, 1);
    EXPECT_THROW(ray_length(g, {1.5, 1.5}, 0.0), Error);
    EXPECT_THROW(ray_length(g, {-0.5, 1.5}, 0.0), Error);
    EXPECT_THROW(ray_length(g, {4.5, 1.5}, 0.0), Error);
    EXPECT_THROW(ray_length(g, {2.0, 2.5}, 0.0), Error);
}

TEST(MaxDiametricLength, EmptyGridCentreIsFullDiagonal)
{
    const OccupancyGrid g(11, 11);
    EXPECT_NEAR(max_diametric_length(g, {5, 5}, {45.0}), 11.0 * std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(max_diametric_length(g, {5, 5}, {0.1}), 11.0 * std::sqrt(2.0), 1e-12);
}

TEST(MaxDiametricLength, CorridorMiddleCellAtOneDegree)
{
    const auto g = generate_corridor(9, 1);
    const double v = max_diametric_length(g, {5, 1}, {1.0});
    EXPECT_GE(v, 9.0);
    EXPECT_LE(v, std::hypot(9.0, 1.0));
    // At 1 degree steps the best sample is 6 degrees, where the end walls bind.
    EXPECT_NEAR(v, 9.0 / std::cos(6.0 * std::acos(-1.0) / 180.0), 1e-12);
    EXPECT_LE(v, corridor_oracle_delta_max);
    EXPECT_LT(corridor_oracle_delta_max - v, 0.01);
    EXPECT_NEAR(corridor_oracle_delta_max, std::hypot(9.0, 1.0), 1e-5);
}

TEST(MaxDiametricLength, SingleOpenCell)
{
    OccupancyGrid g(3, 3, true);
    g.set_obstacle(1, 1, false);
    EXPECT_NEAR(max_diametric_length(g, {1, 1}, {0.1}), std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(max_diametric_length(g, {1, 1}, {90.0}), 1.0, 1e-12);
    EXPECT_THROW(max_diametric_length(g, {0, 0}, {0.1}), Error);
}

TEST(MaxDiametricLength, AgreesWithDenseOracleOnRandomGrid)
{
    std::mt19937 rng(11);
    const auto g = testing::random_grid_with_open(rng, 8, 8, 0.2);
    for (const auto c : testing::open_cells(g))
    {
        const double kernel = max_diametric_length(g, c, {0.01});
        const double dense = oracle::oracle_delta_max(g, c, {0.001});
        EXPECT_LE(kernel, dense) << c.i << "," << c.j;
        EXPECT_LE(dense - kernel, 0.05) << c.i << "," << c.j;
    }
}

TEST(FieldConfig, RejectsBadAngleStep)
{
    const OccupancyGrid g(2, 2);
    EXPECT_THROW(compute_field(g, {0.0}), Error);
    EXPECT_THROW(compute_field(g, {-1.0}), Error);
    EXPECT_THROW(compute_field(g, {91.0}), Error);
}

TEST(ComputeField, SentinelOnObstaclesAndPositiveOnOpen)
{
    std::mt19937 rng(5);
    const auto g = testing::random_grid_with_open(rng, 9, 7, 0.3);
    const auto f = compute_field(g, {1.0});
    for (int j = 0; j < 7; ++j)
        for (int i = 0; i < 9; ++i)
        {
            EXPECT_EQ(f.values.defined(i, j), g.is_open(i, j));
            if (g.is_open(i, j))
                EXPECT_GT(f.values(i, j), 0.0);
        }
}

TEST(ComputeField, OpenGridSymmetricUnderRotationAndMirrors)
{
    const OccupancyGrid g(5, 5);
    const auto f = compute_field(g, {1.0}).values;
    for (auto s : testing::all_symmetries())
        EXPECT_TRUE(testing::transform(f, s).identical(f)) << s.turns << (s.mirror ? "m" : "");
}

TEST(ComputeField, EquivariantUnderSquareSymmetries)
{
    std::mt19937 rng(21);
    for (int trial = 0; trial < 10; ++trial)
    {
        const auto g = testing::random_grid_with_open(rng, 7 + trial % 3, 6, 0.25);
        const auto f = compute_field(g, {2.5}).values;
        for (auto s : testing::all_symmetries())
        {
            const auto rotated = compute_field(testing::transform(g, s), {2.5}).values;
            EXPECT_TRUE(rotated.identical(testing::transform(f, s))) << trial << " " << s.turns << s.mirror;
        }
    }
}

TEST(ComputeField, OpeningAnObstacleNeverShrinksTheField)
{
    std::mt19937 rng(8);
    for (int trial = 0; trial < 20; ++trial)
    {
        auto g = testing::random_grid_with_open(rng, 8, 8, 0.3);
        const auto before = compute_field(g, {3.0}).values;
        for (int j = 0; j < 8; ++j)
            for (int i = 0; i < 8; ++i)
                if (g.is_obstacle(i, j))
                {
                    g.set_obstacle(i, j, false);
                    j = i = 8;
                }
        const auto after = compute_field(g, {3.0}).values;
        for (int j = 0; j < 8; ++j)
            for (int i = 0; i < 8; ++i)
                if (before.defined(i, j))
                    EXPECT_GE(after(i, j), before(i, j));
    }
}

TEST(ComputeField, HalvingTheStepNeverDecreases)
{
    std::mt19937 rng(9);
    for (double step : {2.0, 0.7, 0.3})
    {
        const auto g = testing::random_grid_with_open(rng, 8, 8, 0.2);
        const auto coarse = compute_field(g, {step}).values;
        const auto fine = compute_field(g, {step / 2}).values;
        for (int j = 0; j < 8; ++j)
            for (int i = 0; i < 8; ++i)
                if (coarse.defined(i, j))
                    EXPECT_GE(fine(i, j), coarse(i, j)) << step;
    }
}

TEST(ComputeField, EverySampledChordIsALowerBound)
{
    std::mt19937 rng(10);
    const auto g = testing::random_grid_with_open(rng, 6, 6, 0.2);
    const FieldConfig cfg{5.0};
    const auto f = compute_field(g, cfg).values;
    for (const auto c : testing::open_cells(g))
        for (int k = 0; k * 5.0 < 180.0; ++k)
        {
            const double t = k * 5.0;
            const Point o = cell_center(c.i, c.j);
            EXPECT_GE(f(c.i, c.j), ray_length(g, o, t) + ray_length(g, o, t + 180.0) - 1e-12);
        }
}

TEST(ComputeField, IndependentOfWorkerCount)
{
    std::mt19937 rng(12);
    const auto g = testing::random_grid_with_open(rng, 20, 15, 0.2);
    const auto one = compute_field(g, {0.5}, 1).values;
    for (unsigned workers : {2u, 3u, 8u})
        EXPECT_TRUE(compute_field(g, {0.5}, workers).values.identical(one)) << workers;
}

TEST(ComputeField, HShapeRidgesFollowArmDiagonals)
{
    const HShape h;
    const auto g = generate_h_shape(h);
    const auto f = compute_field(g, {0.5}).values;
    // Inside an arm, away from the bar, the highest values sit on the arm's
    // diagonals and fall off toward the long walls.
    const auto rects = h_shape_rectangles(h);
    const Rect arm = rects[0];
    const int j = arm.y1 - 5;
    int best_i = arm.x0;
    for (int i = arm.x0; i < arm.x1; ++i)
        if (f(i, j) > f(best_i, j))
            best_i = i;
    const double slope = static_cast<double>(arm.x1 - arm.x0) / (arm.y1 - arm.y0);
    const double diag_a = arm.x0 + (arm.y1 - (j + 0.5)) * slope;
    const double diag_b = arm.x1 - (arm.y1 - (j + 0.5)) * slope;
    EXPECT_LT(std::min(std::abs(best_i + 0.5 - diag_a), std::abs(best_i + 0.5 - diag_b)), 1.5);
    EXPECT_GT(f(best_i, j), f(arm.x0, j));
    EXPECT_GT(f(best_i, j), f(arm.x1 - 1, j));
    EXPECT_NEAR(f(best_i, j), std::hypot(arm.x1 - arm.x0, arm.y1 - arm.y0), 0.5);
}

} // namespace
} // namespace isoridge
