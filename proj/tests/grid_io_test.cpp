#include <gtest/gtest.h>

#include <random>
#include <string>

#include <isoridge/grid_io.hpp>

#include "test_support.hpp"

namespace isoridge
{
namespace
{

TEST(ParseOccupancy, AsciiPbmFlipsRowsSoFileTopIsImageTop)
{
    const auto g = parse_occupancy("P1\n2 2\n0 1\n1 0", RasterFormat::PbmAscii);
    ASSERT_EQ(g.width(), 2);
    ASSERT_EQ(g.height(), 2);
    // file (row 0, col 1) is the top row -> j = 1
    EXPECT_TRUE(g.is_obstacle(1, 1));
    EXPECT_TRUE(g.is_obstacle(0, 0));
    EXPECT_TRUE(g.is_open(0, 1));
    EXPECT_TRUE(g.is_open(1, 0));
}

TEST(ParseOccupancy, AllZerosIsAllOpen)
{
    const auto g = parse_occupancy("P1\n3 3\n0 0 0\n0 0 0\n0 0 0\n", RasterFormat::PbmAscii);
    EXPECT_EQ(g.open_count(), 9u);
}

TEST(ParseOccupancy, AsciiPbmWithoutSeparatorsAndComments)
{
    const auto g = parse_occupancy("P1\n# a comment\n3 1\n# another\n010\n", RasterFormat::PbmAscii);
    EXPECT_TRUE(g.is_open(0, 0));
    EXPECT_TRUE(g.is_obstacle(1, 0));
    EXPECT_TRUE(g.is_open(2, 0));
}

TEST(ParseOccupancy, MissingValueIsPayloadMismatch)
{
    try
    {
        parse_occupancy("P1\n2 2\n0 1 1", RasterFormat::PbmAscii);
        FAIL() << "expected ParseError";
    }
    catch (const ParseError& e)
    {
        EXPECT_NE(std::string(e.what()).find("payload mismatch"), std::string::npos);
        EXPECT_EQ(e.offset(), 12u);
    }
}

TEST(ParseOccupancy, ErrorsCarryOffsets)
{
    EXPECT_THROW(parse_occupancy("P1\n0 2\n", RasterFormat::PbmAscii), ParseError);
    EXPECT_THROW(parse_occupancy("P1\nx 2\n", RasterFormat::PbmAscii), ParseError);
    EXPECT_THROW(parse_occupancy("P1\n2 1\n0 2\n", RasterFormat::PbmAscii), ParseError);
    EXPECT_THROW(parse_occupancy("P1\n1 1\n0 0\n", RasterFormat::PbmAscii), ParseError);
    EXPECT_THROW(parse_occupancy("Q1\n1 1\n0\n", RasterFormat::PbmAscii), ParseError);
    EXPECT_THROW(parse_occupancy("P4\n1 1\n0", RasterFormat::PbmAscii), ParseError);
    EXPECT_THROW(parse_occupancy(std::string("P4\n9 1\n\x01", 8), RasterFormat::PbmBinary), ParseError);

    try
    {
        parse_occupancy("P1\n2 x\n", RasterFormat::PbmAscii);
        FAIL();
    }
    catch (const ParseError& e)
    {
        EXPECT_EQ(e.offset(), 5u);
    }
}

TEST(ParseOccupancy, BinaryPbmUnpacksBitsMsbFirst)
{
    // 10 columns -> 2 bytes per row; row: 1000000001
    const std::string bytes = std::string("P4\n10 1\n") + char(0x80) + char(0x40);
    const auto g = parse_occupancy(bytes, RasterFormat::PbmBinary);
    for (int i = 0; i < 10; ++i)
        EXPECT_EQ(g.is_obstacle(i, 0), i == 0 || i == 9) << i;
}

TEST(ParseOccupancy, PgmThresholdAsciiAndBinary)
{
    const auto a = parse_occupancy("P2\n3 1\n255\n0 127 128\n", RasterFormat::PgmThreshold);
    EXPECT_TRUE(a.is_obstacle(0, 0));
    EXPECT_TRUE(a.is_obstacle(1, 0));
    EXPECT_TRUE(a.is_open(2, 0));

    const std::string p5 = std::string("P5\n3 1\n255\n") + char(10) + char(200) + char(128);
    const auto b = parse_occupancy(p5, RasterFormat::PgmThreshold);
    EXPECT_TRUE(b.is_obstacle(0, 0));
    EXPECT_TRUE(b.is_open(1, 0));
    EXPECT_TRUE(b.is_open(2, 0));

    const auto c = parse_occupancy(p5, RasterFormat::PgmThreshold, 201);
    EXPECT_EQ(c.open_count(), 0u);

    const std::string wide = std::string("P5\n1 1\n1000\n") + char(0x01) + char(0xf4); // 500
    EXPECT_TRUE(parse_occupancy(wide, RasterFormat::PgmThreshold, 501).is_obstacle(0, 0));
    EXPECT_TRUE(parse_occupancy(wide, RasterFormat::PgmThreshold, 500).is_open(0, 0));

    EXPECT_THROW(parse_occupancy("P2\n1 1\n255\n300\n", RasterFormat::PgmThreshold), ParseError);
}

TEST(ParseOccupancy, AutoDetectsFormat)
{
    EXPECT_EQ(parse_occupancy("P1\n1 1\n1\n").open_count(), 0u);
    EXPECT_EQ(parse_occupancy("P2\n1 1\n255\n255\n").open_count(), 1u);
    EXPECT_THROW(parse_occupancy("P3\n1 1\n255\n0 0 0\n"), ParseError);
}

TEST(ParseOccupancy, DecodeEncodeFixpoint)
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial)
    {
        std::uniform_int_distribution<int> dim(1, 19);
        const auto g = testing::random_grid(rng, dim(rng), dim(rng), 0.4);
        for (bool binary : {false, true})
        {
            const auto bytes = write_occupancy(g, binary);
            EXPECT_EQ(parse_occupancy(bytes), g);
            EXPECT_EQ(write_occupancy(parse_occupancy(bytes), binary), bytes);
        }
    }
}

TEST(GenerateHShape, SymmetricUnderBothMirrors)
{
    const auto g = generate_h_shape({100, 100, 20, 90, 40, 20});
    for (int j = 0; j < 100; ++j)
        for (int i = 0; i < 100; ++i)
        {
            ASSERT_EQ(g.is_obstacle(i, j), g.is_obstacle(99 - i, j));
            ASSERT_EQ(g.is_obstacle(i, j), g.is_obstacle(i, 99 - j));
        }
}

TEST(GenerateHShape, OpenCountMatchesIndependentRasterization)
{
    // Rectangles rebuilt here from the layout rule: bar centred, arms abutting
    // its ends, everything centred vertically.
    const int cw = 10, ch = 10, aw = 2, ah = 8, bw = 4, bh = 2;
    const int bx0 = (cw - bw) / 2, by0 = (ch - bh) / 2, ay0 = (ch - ah) / 2;
    auto inside = [&](int i, int j) {
        const bool left = i >= bx0 - aw && i < bx0 && j >= ay0 && j < ay0 + ah;
        const bool bar = i >= bx0 && i < bx0 + bw && j >= by0 && j < by0 + bh;
        const bool right = i >= bx0 + bw && i < bx0 + bw + aw && j >= ay0 && j < ay0 + ah;
        return left || bar || right;
    };
    std::size_t expected = 0;
    for (int j = 0; j < ch; ++j)
        for (int i = 0; i < cw; ++i)
            expected += inside(i, j) ? 1 : 0;
    ASSERT_EQ(expected, 40u); // 2*2*8 + 4*2, no overlap in this layout

    const auto g = generate_h_shape({cw, ch, aw, ah, bw, bh});
    EXPECT_EQ(g.open_count(), expected);
    for (int j = 0; j < ch; ++j)
        for (int i = 0; i < cw; ++i)
            EXPECT_EQ(g.is_open(i, j), inside(i, j)) << i << "," << j;
}

TEST(GenerateHShape, RejectsGeometryThatDoesNotFit)
{
    EXPECT_THROW(generate_h_shape({100, 100, 20, 110, 40, 20}), Error);
    EXPECT_THROW(generate_h_shape({100, 100, 40, 90, 40, 20}), Error);
    EXPECT_THROW(generate_h_shape({100, 100, 20, 90, 41, 20}), Error);
}

TEST(WriteField, PgmRescalesToFullRange)
{
    ScalarField one(1, 1);
    one(0, 0) = 5.0;
    const auto p = write_field(one, FieldFormat::Pgm16);
    const std::string header = "P5\n1 1\n65535\n";
    ASSERT_EQ(p.substr(0, header.size()), header);
    EXPECT_EQ(static_cast<unsigned char>(p[header.size()]), 0xff);
    EXPECT_EQ(static_cast<unsigned char>(p[header.size() + 1]), 0xff);

    ScalarField two(2, 1);
    two(0, 0) = 0.0;
    two(1, 0) = 2.0;
    const auto q = write_field(two, FieldFormat::Pgm16);
    const std::string h2 = "P5\n2 1\n65535\n";
    ASSERT_EQ(q.size(), h2.size() + 4);
    EXPECT_EQ(q.substr(h2.size()), std::string("\x00\x00\xff\xff", 4));
}

TEST(WriteField, CsvLeavesSentinelEmpty)
{
    ScalarField f(2, 1);
    f(0, 0) = 1.0;
    EXPECT_EQ(write_field(f, FieldFormat::Csv), "1.000000,\n");
}

TEST(WriteField, CsvRoundTripKeepsSixSignificantDigits)
{
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> value(0.0, 500.0);
    ScalarField f(7, 5);
    for (int j = 0; j < 5; ++j)
        for (int i = 0; i < 7; ++i)
            if ((i + j) % 4 != 0)
                f(i, j) = value(rng);
    const auto back = parse_field_csv(write_field(f, FieldFormat::Csv));
    ASSERT_EQ(back.width(), 7);
    ASSERT_EQ(back.height(), 5);
    for (int j = 0; j < 5; ++j)
        for (int i = 0; i < 7; ++i)
        {
            ASSERT_EQ(back.defined(i, j), f.defined(i, j));
            if (f.defined(i, j))
                EXPECT_NEAR(back(i, j), f(i, j), 1e-6 * std::max(1.0, f(i, j)));
        }
}

} // namespace
} // namespace isoridge
