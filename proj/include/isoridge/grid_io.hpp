#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "grid.hpp"

namespace isoridge
{

enum class RasterFormat
{
    PbmAscii,     // P1
    PbmBinary,    // P4
    PgmThreshold, // P2 or P5, thresholded at a luminance cutoff
};

enum class FieldFormat
{
    Pgm16,
    Csv,
};

inline constexpr int default_pgm_cutoff = 128;

namespace detail
{

class NetpbmReader
{
public:
    explicit NetpbmReader(std::string_view bytes) : bytes_(bytes) {}

    std::size_t offset() const noexcept { return pos_; }
    bool at_end() const noexcept { return pos_ >= bytes_.size(); }
    std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

    std::string magic()
    {
        if (bytes_.size() < 2 || bytes_[0] != 'P')
            throw ParseError("missing Netpbm magic number", 0);
        pos_ = 2;
        return std::string(bytes_.substr(0, 2));
    }

    void skip_space_and_comments()
    {
        while (pos_ < bytes_.size())
        {
            const char c = bytes_[pos_];
            if (c == '#')
            {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r')
                    ++pos_;
            }
            else if (std::isspace(static_cast<unsigned char>(c)))
                ++pos_;
            else
                break;
        }
    }

    long header_integer(const char* what)
    {
        skip_space_and_comments();
        const std::size_t start = pos_;
        long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_])))
        {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > (1L << 24))
                throw ParseError(std::string(what) + " too large", start);
            ++pos_;
        }
        if (pos_ == start)
            throw ParseError(std::string("malformed header: expected ") + what, start);
        return value;
    }

    // Exactly one whitespace byte separates the header from a binary payload.
    void end_of_binary_header()
    {
        if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_])))
            throw ParseError("malformed header: expected whitespace before raster data", pos_);
        ++pos_;
    }

    unsigned char byte() { return static_cast<unsigned char>(bytes_[pos_++]); }
    char peek() const { return bytes_[pos_]; }
    void advance() { ++pos_; }

private:
    std::string_view bytes_;
    std::size_t pos_ = 0;
};

inline void check_dimensions(long width, long height, std::size_t offset)
{
    if (width == 0 || height == 0)
        throw ParseError("zero raster dimension", offset);
    if (width * height > (1L << 28))
        throw ParseError("raster too large", offset);
}

// File row 0 is the top of the image; grid row j = 0 is the bottom.
inline int grid_row(int file_row, int height) { return height - 1 - file_row; }

inline OccupancyGrid parse_p1(NetpbmReader& in)
{
    const long w = in.header_integer("width");
    const long h = in.header_integer("height");
    check_dimensions(w, h, in.offset());
    OccupancyGrid grid(static_cast<int>(w), static_cast<int>(h));
    const long total = w * h;
    for (long k = 0; k < total; ++k)
    {
        in.skip_space_and_comments();
        if (in.at_end())
            throw ParseError("payload mismatch: expected " + std::to_string(total) + " pixels, found " +
                                 std::to_string(k),
                             in.offset());
        const char c = in.peek();
        if (c != '0' && c != '1')
            throw ParseError(std::string("unexpected character '") + c + "' in P1 payload", in.offset());
        in.advance();
        grid.set_obstacle(static_cast<int>(k % w), grid_row(static_cast<int>(k / w), static_cast<int>(h)),
                          c == '1');
    }
    in.skip_space_and_comments();
    if (!in.at_end())
        throw ParseError("payload mismatch: trailing data after " + std::to_string(total) + " pixels",
                         in.offset());
    return grid;
}

inline OccupancyGrid parse_p4(NetpbmReader& in)
{
    const long w = in.header_integer("width");
    const long h = in.header_integer("height");
    check_dimensions(w, h, in.offset());
    in.end_of_binary_header();
    const std::size_t row_bytes = static_cast<std::size_t>((w + 7) / 8);
    if (in.remaining() < row_bytes * static_cast<std::size_t>(h))
        throw ParseError("payload mismatch: expected " + std::to_string(row_bytes * h) + " bytes, found " +
                             std::to_string(in.remaining()),
                         in.offset());
    OccupancyGrid grid(static_cast<int>(w), static_cast<int>(h));
    for (int r = 0; r < h; ++r)
    {
        for (std::size_t b = 0; b < row_bytes; ++b)
        {
            const unsigned char bits = in.byte();
            for (int k = 0; k < 8; ++k)
            {
                const long col = static_cast<long>(b) * 8 + k;
                if (col < w)
                    grid.set_obstacle(static_cast<int>(col), grid_row(r, static_cast<int>(h)),
                                      (bits >> (7 - k)) & 1u);
            }
        }
    }
    return grid;
}

inline OccupancyGrid parse_pgm(NetpbmReader& in, bool binary, int cutoff)
{
    const long w = in.header_integer("width");
    const long h = in.header_integer("height");
    const std::size_t maxval_offset = in.offset();
    const long maxval = in.header_integer("maxval");
    if (maxval < 1 || maxval > 65535)
        throw ParseError("malformed header: maxval out of range", maxval_offset);
    check_dimensions(w, h, in.offset());
    OccupancyGrid grid(static_cast<int>(w), static_cast<int>(h));
    const long total = w * h;
    if (binary)
    {
        in.end_of_binary_header();
        const std::size_t sample_bytes = maxval > 255 ? 2 : 1;
        if (in.remaining() < sample_bytes * static_cast<std::size_t>(total))
            throw ParseError("payload mismatch: expected " + std::to_string(sample_bytes * total) +
                                 " bytes, found " + std::to_string(in.remaining()),
                             in.offset());
        for (long k = 0; k < total; ++k)
        {
            long v = in.byte();
            if (sample_bytes == 2)
                v = (v << 8) | in.byte();
            grid.set_obstacle(static_cast<int>(k % w), grid_row(static_cast<int>(k / w), static_cast<int>(h)),
                              v < cutoff);
        }
        return grid;
    }
    for (long k = 0; k < total; ++k)
    {
        in.skip_space_and_comments();
        if (in.at_end())
            throw ParseError("payload mismatch: expected " + std::to_string(total) + " samples, found " +
                                 std::to_string(k),
                             in.offset());
        const std::size_t at = in.offset();
        const long v = in.header_integer("sample");
        if (v > maxval)
            throw ParseError("sample exceeds maxval", at);
        grid.set_obstacle(static_cast<int>(k % w), grid_row(static_cast<int>(k / w), static_cast<int>(h)),
                          v < cutoff);
    }
    in.skip_space_and_comments();
    if (!in.at_end())
        throw ParseError("payload mismatch: trailing data after " + std::to_string(total) + " samples",
                         in.offset());
    return grid;
}

} // namespace detail

/// Decodes a PBM/PGM raster. PBM 1 (black) and PGM samples below `cutoff`
/// become obstacles.
inline OccupancyGrid parse_occupancy(std::string_view bytes, RasterFormat format, int cutoff = default_pgm_cutoff)
{
    detail::NetpbmReader in(bytes);
    const std::string magic = in.magic();
    switch (format)
    {
    case RasterFormat::PbmAscii:
        if (magic != "P1")
            throw ParseError("expected P1 magic, found " + magic, 0);
        return detail::parse_p1(in);
    case RasterFormat::PbmBinary:
        if (magic != "P4")
            throw ParseError("expected P4 magic, found " + magic, 0);
        return detail::parse_p4(in);
    case RasterFormat::PgmThreshold:
        if (magic != "P2" && magic != "P5")
            throw ParseError("expected P2 or P5 magic, found " + magic, 0);
        return detail::parse_pgm(in, magic == "P5", cutoff);
    }
    throw Error("unknown raster format");
}

/// Picks the format from the magic number.
inline OccupancyGrid parse_occupancy(std::string_view bytes, int cutoff = default_pgm_cutoff)
{
    if (bytes.size() < 2 || bytes[0] != 'P')
        throw ParseError("missing Netpbm magic number", 0);
    switch (bytes[1])
    {
    case '1': return parse_occupancy(bytes, RasterFormat::PbmAscii, cutoff);
    case '4': return parse_occupancy(bytes, RasterFormat::PbmBinary, cutoff);
    case '2':
    case '5': return parse_occupancy(bytes, RasterFormat::PgmThreshold, cutoff);
    default: throw ParseError("unsupported Netpbm type P" + std::string(1, bytes[1]), 0);
    }
}

/// Serializes a binary raster (true = black) as PBM, top row first.
template <typename IsSet>
std::string write_pbm(int width, int height, IsSet&& is_set, bool binary)
{
    std::string out = (binary ? "P4\n" : "P1\n") + std::to_string(width) + " " + std::to_string(height) + "\n";
    for (int r = 0; r < height; ++r)
    {
        const int j = detail::grid_row(r, height);
        if (binary)
        {
            for (int b = 0; b < (width + 7) / 8; ++b)
            {
                unsigned char bits = 0;
                for (int k = 0; k < 8; ++k)
                {
                    const int i = b * 8 + k;
                    if (i < width && is_set(i, j))
                        bits |= static_cast<unsigned char>(1u << (7 - k));
                }
                out.push_back(static_cast<char>(bits));
            }
        }
        else
        {
            for (int i = 0; i < width; ++i)
            {
                if (i > 0)
                    out.push_back(' ');
                out.push_back(is_set(i, j) ? '1' : '0');
            }
            out.push_back('\n');
        }
    }
    return out;
}

inline std::string write_occupancy(const OccupancyGrid& grid, bool binary = false)
{
    return write_pbm(grid.width(), grid.height(), [&](int i, int j) { return grid.is_obstacle(i, j); }, binary);
}

/// 16-bit binary PGM, top row first, big-endian samples.
template <typename Sample>
std::string write_pgm16(int width, int height, Sample&& sample)
{
    std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n65535\n";
    out.reserve(out.size() + 2 * static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
    for (int r = 0; r < height; ++r)
    {
        const int j = detail::grid_row(r, height);
        for (int i = 0; i < width; ++i)
        {
            const std::uint16_t v = sample(i, j);
            out.push_back(static_cast<char>(v >> 8));
            out.push_back(static_cast<char>(v & 0xff));
        }
    }
    return out;
}

/// Linear map of [0, max] onto [0, 65535]; sentinel cells map to 0.
inline std::string write_field(const ScalarField& field, FieldFormat format)
{
    if (format == FieldFormat::Pgm16)
    {
        const double top = field.max_value();
        return write_pgm16(field.width(), field.height(), [&](int i, int j) -> std::uint16_t {
            if (!field.defined(i, j) || top <= 0.0)
                return 0;
            const double v = std::clamp(field(i, j) / top, 0.0, 1.0);
            return static_cast<std::uint16_t>(std::lround(v * 65535.0));
        });
    }

    std::string out;
    char buf[64];
    for (int r = 0; r < field.height(); ++r)
    {
        const int j = detail::grid_row(r, field.height());
        for (int i = 0; i < field.width(); ++i)
        {
            if (i > 0)
                out.push_back(',');
            if (field.defined(i, j))
            {
                std::snprintf(buf, sizeof buf, "%.6f", field(i, j));
                out += buf;
            }
        }
        out.push_back('\n');
    }
    return out;
}

/// Reads the CSV produced by write_field. Empty cells become the sentinel.
inline ScalarField parse_field_csv(std::string_view text)
{
    std::vector<std::vector<double>> rows;
    std::size_t pos = 0;
    while (pos < text.size())
    {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        std::vector<double> row;
        std::size_t start = 0;
        for (;;)
        {
            const std::size_t comma = line.find(',', start);
            const std::string cell(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                      : comma - start));
            if (cell.empty())
                row.push_back(ScalarField::undefined);
            else
            {
                std::size_t used = 0;
                double v = 0.0;
                try
                {
                    v = std::stod(cell, &used);
                }
                catch (const std::exception&)
                {
                    used = 0;
                }
                if (used != cell.size())
                    throw ParseError("malformed CSV value '" + cell + "'", pos + start);
                row.push_back(v);
            }
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError("ragged CSV row", pos);
        rows.push_back(std::move(row));
        pos = eol + 1;
    }
    if (rows.empty())
        throw ParseError("empty CSV field", 0);
    const int h = static_cast<int>(rows.size());
    const int w = static_cast<int>(rows.front().size());
    ScalarField field(w, h);
    for (int r = 0; r < h; ++r)
        for (int i = 0; i < w; ++i)
            field(i, detail::grid_row(r, h)) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)];
    return field;
}

struct HShape
{
    int canvas_w = 100;
    int canvas_h = 100;
    int arm_w = 20;
    int arm_h = 90;
    int bar_w = 40;
    int bar_h = 10;
};

struct Rect
{
    int x0, y0, x1, y1; // half-open [x0, x1) x [y0, y1)

    bool contains(int i, int j) const noexcept { return i >= x0 && i < x1 && j >= y0 && j < y1; }
};

/// The three open rectangles of the H: left arm, bar, right arm. The bar is
/// centred on the canvas and the arms abut its ends, centred vertically.
inline std::vector<Rect> h_shape_rectangles(const HShape& s)
{
    if (s.canvas_w < 1 || s.canvas_h < 1 || s.arm_w < 1 || s.arm_h < 1 || s.bar_w < 1 || s.bar_h < 1)
        throw Error("H shape dimensions must be positive");
    if (2 * s.arm_w + s.bar_w > s.canvas_w || s.arm_h > s.canvas_h || s.bar_h > s.arm_h)
        throw Error("H shape does not fit the canvas");
    if ((s.canvas_w - s.bar_w) % 2 != 0 || (s.canvas_h - s.arm_h) % 2 != 0 || (s.canvas_h - s.bar_h) % 2 != 0)
        throw Error("H shape cannot be centred symmetrically on the canvas (parity mismatch)");
    const int bar_x0 = (s.canvas_w - s.bar_w) / 2;
    const int bar_y0 = (s.canvas_h - s.bar_h) / 2;
    const int arm_y0 = (s.canvas_h - s.arm_h) / 2;
    return {
        {bar_x0 - s.arm_w, arm_y0, bar_x0, arm_y0 + s.arm_h},
        {bar_x0, bar_y0, bar_x0 + s.bar_w, bar_y0 + s.bar_h},
        {bar_x0 + s.bar_w, arm_y0, bar_x0 + s.bar_w + s.arm_w, arm_y0 + s.arm_h},
    };
}

inline OccupancyGrid generate_h_shape(const HShape& s)
{
    const auto rects = h_shape_rectangles(s);
    OccupancyGrid grid(s.canvas_w, s.canvas_h, true);
    for (const auto& r : rects)
        for (int j = r.y0; j < r.y1; ++j)
            for (int i = r.x0; i < r.x1; ++i)
                grid.set_obstacle(i, j, false);
    return grid;
}

/// Straight corridor of `length` open cells, one cell wide, along x, centred
/// in an obstacle canvas with `margin` cells on every side.
inline OccupancyGrid generate_corridor(int length, int margin = 1)
{
    if (length < 1 || margin < 0)
        throw Error("corridor length must be positive");
    OccupancyGrid grid(length + 2 * margin, 1 + 2 * margin, true);
    for (int i = 0; i < length; ++i)
        grid.set_obstacle(margin + i, margin, false);
    return grid;
}

/// Synthetic settlement: irregular building blocks separated by streets of
/// varying width plus two diagonal lanes. Deterministic for a given seed.
inline OccupancyGrid generate_town(int width, int height, unsigned seed = 1)
{
    if (width < 8 || height < 8)
        throw Error("town canvas too small");
    std::mt19937 rng(seed);
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

    OccupancyGrid grid(width, height, true);
    auto open_rect = [&](int x0, int y0, int x1, int y1) {
        for (int j = std::max(0, y0); j < std::min(height, y1); ++j)
            for (int i = std::max(0, x0); i < std::min(width, x1); ++i)
                grid.set_obstacle(i, j, false);
    };

    // street network: vertical and horizontal streets at irregular spacing
    for (int x = uniform(4, 12); x < width - 3; x += uniform(22, 40))
        open_rect(x, 0, x + uniform(3, 7), height);
    for (int y = uniform(4, 12); y < height - 3; y += uniform(20, 34))
        open_rect(0, y, width, y + uniform(3, 6));

    // small squares
    for (int k = 0; k < 4; ++k)
    {
        const int cx = uniform(10, width - 20);
        const int cy = uniform(10, height - 20);
        open_rect(cx, cy, cx + uniform(8, 16), cy + uniform(8, 14));
    }

    // diagonal lanes
    const double lane = 2.5;
    const double slope = static_cast<double>(height) / width;
    for (int j = 0; j < height; ++j)
        for (int i = 0; i < width; ++i)
        {
            const double x = i + 0.5;
            const double y = j + 0.5;
            const double d1 = std::abs(y - slope * x) / std::hypot(1.0, slope);
            const double d2 = std::abs(y - (height * 0.8 - 0.6 * x)) / std::hypot(1.0, 0.6);
            if (d1 < lane || d2 < lane * 0.8)
                grid.set_obstacle(i, j, false);
        }
    return grid;
}

} // namespace isoridge
