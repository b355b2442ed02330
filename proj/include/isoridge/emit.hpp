#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "grid_io.hpp"
#include "pipeline.hpp"
#include "ridge_detect.hpp"

namespace isoridge
{

/// printf-style fixed formatting that never prints a negative zero.
inline std::string fixed(double value, int decimals)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    std::string s(buf);
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos)
        s.erase(0, 1);
    return s;
}

inline std::string lines_to_csv(const std::vector<AxialLine>& lines)
{
    std::string out = "rank,rho,theta_deg,votes,x1,y1,x2,y2,length\n";
    for (const auto& l : lines)
    {
        out += std::to_string(l.params.rank) + "," + fixed(l.params.rho, 3) + "," + fixed(l.params.theta, 1) + "," +
               std::to_string(l.params.votes) + "," + fixed(l.segment.a.x, 1) + "," + fixed(l.segment.a.y, 1) + "," +
               fixed(l.segment.b.x, 1) + "," + fixed(l.segment.b.y, 1) + "," + fixed(l.length, 3) + "\n";
    }
    return out;
}

inline nlohmann::json run_metadata(const PipelineConfig& config, const PipelineResult& result)
{
    return {
        {"angle_step_deg", config.field.angle_step},
        {"theta_step_deg", config.theta_step},
        {"rho_bin", config.rho_bin},
        {"hough_origin", {result.hough.origin.x, result.hough.origin.y}},
        {"suppression_window", {{"rho_bins", config.suppress_rho}, {"theta_bins", config.suppress_theta}}},
        {"num_lines", config.num_lines},
        {"min_length", config.min_length},
        {"ridge_points", result.mask.count()},
        {"skipped_peaks", result.skipped.size()},
        {"grid", {{"width", result.field.values.width()}, {"height", result.field.values.height()}}},
    };
}

/// FeatureCollection of LineStrings in cell coordinates (x right, y up).
inline std::string lines_to_geojson(const std::vector<AxialLine>& lines, const nlohmann::json& metadata = nullptr)
{
    nlohmann::json features = nlohmann::json::array();
    for (const auto& l : lines)
    {
        nlohmann::json props = {{"rank", l.params.rank},
                                {"votes", l.params.votes},
                                {"rho", l.params.rho},
                                {"theta_deg", l.params.theta},
                                {"length", l.length}};
        if (l.open_run)
            props["open_run"] = {{l.open_run->a.x, l.open_run->a.y}, {l.open_run->b.x, l.open_run->b.y}};
        features.push_back({{"type", "Feature"},
                            {"geometry",
                             {{"type", "LineString"},
                              {"coordinates", {{l.segment.a.x, l.segment.a.y}, {l.segment.b.x, l.segment.b.y}}}}},
                            {"properties", props}});
    }
    nlohmann::json doc = {{"type", "FeatureCollection"}, {"features", features}};
    if (!metadata.is_null())
        doc["isoridge"] = metadata;
    return doc.dump(2) + "\n";
}

/// Obstacles filled grey, lines in red labelled l1..lk. `scale` pixels per cell.
inline std::string lines_to_svg(const OccupancyGrid& grid, const std::vector<AxialLine>& lines, int scale = 4)
{
    const int w = grid.width(), h = grid.height();
    auto sx = [&](double x) { return fixed(x * scale, 2); };
    auto sy = [&](double y) { return fixed((h - y) * scale, 2); };

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w * scale) +
                      "\" height=\"" + std::to_string(h * scale) + "\" viewBox=\"0 0 " + std::to_string(w * scale) +
                      " " + std::to_string(h * scale) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g fill=\"#555\" stroke=\"none\">\n";
    for (int j = 0; j < h; ++j)
    {
        for (int i = 0; i < w;)
        {
            if (!grid.is_obstacle(i, j))
            {
                ++i;
                continue;
            }
            int end = i;
            while (end < w && grid.is_obstacle(end, j))
                ++end;
            out += "<rect x=\"" + sx(i) + "\" y=\"" + sy(j + 1) + "\" width=\"" + std::to_string((end - i) * scale) +
                   "\" height=\"" + std::to_string(scale) + "\"/>\n";
            i = end;
        }
    }
    out += "</g>\n<g stroke=\"#d00\" stroke-width=\"" + fixed(std::max(1.0, scale / 2.0), 1) +
           "\" fill=\"#d00\" font-family=\"sans-serif\" font-size=\"" + std::to_string(3 * scale) + "\">\n";
    for (const auto& l : lines)
    {
        const auto& s = l.segment;
        out += "<line x1=\"" + sx(s.a.x) + "\" y1=\"" + sy(s.a.y) + "\" x2=\"" + sx(s.b.x) + "\" y2=\"" + sy(s.b.y) +
               "\"/>\n";
        const double mx = (s.a.x + s.b.x) / 2.0, my = (s.a.y + s.b.y) / 2.0;
        out += "<text x=\"" + sx(mx) + "\" y=\"" + sy(my) + "\" stroke=\"none\">l" +
               std::to_string(l.params.rank) + "</text>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

/// 16-bit PGM of the vote array: theta bins left to right, rho increasing upward.
inline std::string accumulator_to_pgm(const HoughAccumulator& acc)
{
    const double top = acc.max_votes();
    return write_pgm16(acc.theta_bins(), acc.rho_bins(), [&](int t, int r) -> std::uint16_t {
        return top > 0 ? static_cast<std::uint16_t>(std::lround(acc.at(r, t) / top * 65535.0)) : 0;
    });
}

namespace detail
{

inline void write_file(const std::filesystem::path& path, const std::string& bytes)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot open " + path.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw Error("failed writing " + path.string());
}

} // namespace detail

/// Writes the requested artifacts plus run.json into `dir`; returns the paths written.
inline std::vector<std::filesystem::path> emit(const std::vector<AxialLine>& lines, const PipelineResult& result,
                                               const OccupancyGrid& grid, const PipelineConfig& config,
                                               const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    auto put = [&](const char* name, const std::string& bytes) {
        detail::write_file(dir / name, bytes);
        written.push_back(dir / name);
    };
    const auto meta = run_metadata(config, result);
    for (Artifact a : config.emit)
    {
        switch (a)
        {
        case Artifact::Csv: put("lines.csv", lines_to_csv(lines)); break;
        case Artifact::GeoJson: put("lines.geojson", lines_to_geojson(lines, meta)); break;
        case Artifact::Svg: put("lines.svg", lines_to_svg(grid, lines)); break;
        case Artifact::FieldPgm: put("field.pgm", write_field(result.field.values, FieldFormat::Pgm16)); break;
        case Artifact::MaskPbm: put("mask.pbm", write_mask(result.mask)); break;
        case Artifact::AccumulatorPgm: put("accumulator.pgm", accumulator_to_pgm(result.accumulator)); break;
        }
    }
    put("run.json", meta.dump(2) + "\n");
    return written;
}

} // namespace isoridge
