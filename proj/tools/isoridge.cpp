// isoridge command line: axial-line extraction and test fixtures.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include <isoridge/isoridge.hpp>

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_empty = 2;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw isoridge::Error("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::pair<int, int> parse_pair(const std::string& text, char sep, const char* what)
{
    const auto at = text.find(sep);
    try
    {
        if (at == std::string::npos)
            throw std::invalid_argument(what);
        std::size_t used_a = 0, used_b = 0;
        const int a = std::stoi(text.substr(0, at), &used_a);
        const int b = std::stoi(text.substr(at + 1), &used_b);
        if (used_a != at || used_b != text.size() - at - 1)
            throw std::invalid_argument(what);
        return {a, b};
    }
    catch (const std::exception&)
    {
        throw isoridge::Error(std::string("malformed ") + what + " '" + text + "', expected A" + sep + "B");
    }
}

std::set<isoridge::Artifact> parse_emit(const std::string& list)
{
    static const std::map<std::string, isoridge::Artifact> names{
        {"csv", isoridge::Artifact::Csv},
        {"geojson", isoridge::Artifact::GeoJson},
        {"svg", isoridge::Artifact::Svg},
        {"field-pgm", isoridge::Artifact::FieldPgm},
        {"mask-pbm", isoridge::Artifact::MaskPbm},
        {"accumulator-pgm", isoridge::Artifact::AccumulatorPgm},
    };
    std::set<isoridge::Artifact> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        if (item.empty())
            continue;
        const auto it = names.find(item);
        if (it == names.end())
            throw isoridge::Error("unknown artifact '" + item + "'");
        out.insert(it->second);
    }
    return out;
}

void write_output(const std::string& path, const std::string& bytes)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !out.write(bytes.data(), static_cast<std::streamsize>(bytes.size())))
        throw isoridge::Error("cannot write " + path);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Axial lines as ridges of the maximum-diametric-length isovist field"};
    app.require_subcommand(1);

    // extract
    auto* extract = app.add_subcommand("extract", "Extract ranked axial lines from a PBM/PGM raster");
    std::string input;
    std::string out_dir = ".";
    std::string emit_list = "csv";
    std::string suppress = "2,2";
    std::string min_length_text = "0";
    int cutoff = isoridge::default_pgm_cutoff;
    isoridge::PipelineConfig config;
    extract->add_option("input", input, "Occupancy raster (P1/P4 PBM, P2/P5 PGM); black/dark = obstacle")
        ->required()
        ->check(CLI::ExistingFile);
    extract->add_option("--angle-step", config.field.angle_step, "Ray sweep step in degrees")
        ->capture_default_str();
    extract->add_option("--theta-step", config.theta_step, "Hough theta bin width in degrees")->capture_default_str();
    extract->add_option("--rho-bin", config.rho_bin, "Hough rho bin width in cells")->capture_default_str();
    extract->add_option("--lines", config.num_lines, "Number of ranked lines to extract")->capture_default_str();
    extract->add_option("--min-length", min_length_text,
                        "Drop lines shorter than this (cells); 'auto' uses the narrowest street width")
        ->capture_default_str();
    extract->add_option("--suppress", suppress, "Peak suppression half-window RHO,THETA in bins")
        ->capture_default_str();
    extract->add_option("--emit", emit_list, "Comma list of csv,geojson,svg,field-pgm,mask-pbm,accumulator-pgm")
        ->capture_default_str();
    extract->add_option("--out", out_dir, "Output directory")->capture_default_str();
    extract->add_option("--threads", config.workers, "Worker threads (0 = all cores)")->capture_default_str();
    extract->add_option("--cutoff", cutoff, "PGM luminance below which a pixel is an obstacle")
        ->capture_default_str();
    extract->add_flag("--clip-open", config.clip_to_open,
                      "Extension: also report each line's longest run through open space (GeoJSON)");

    // fixture
    auto* fixture = app.add_subcommand("fixture", "Write a synthetic occupancy raster");
    fixture->require_subcommand(1);
    std::string fixture_out;
    bool binary = false;

    auto* h = fixture->add_subcommand("h", "H-shaped open space");
    std::string canvas = "100x100", arm = "20x90", bar = "40x10";
    h->add_option("--canvas", canvas, "Canvas WxH in cells")->capture_default_str();
    h->add_option("--arm", arm, "Arm WxH in cells")->capture_default_str();
    h->add_option("--bar", bar, "Bar WxH in cells")->capture_default_str();

    auto* corridor = fixture->add_subcommand("corridor", "One-cell-wide straight corridor");
    int corridor_length = 9, corridor_margin = 1;
    corridor->add_option("--length", corridor_length, "Corridor length in cells")->capture_default_str();
    corridor->add_option("--margin", corridor_margin, "Obstacle margin in cells")->capture_default_str();

    auto* town = fixture->add_subcommand("town", "Synthetic settlement with streets and squares");
    std::string town_size = "300x171";
    unsigned town_seed = 1;
    town->add_option("--size", town_size, "Canvas WxH in cells")->capture_default_str();
    town->add_option("--seed", town_seed, "Generator seed")->capture_default_str();

    for (auto* sub : {h, corridor, town})
    {
        sub->add_option("--out", fixture_out, "Output PBM path")->required();
        sub->add_flag("--binary", binary, "Write P4 instead of P1");
    }

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (fixture->parsed())
        {
            isoridge::OccupancyGrid grid;
            if (h->parsed())
            {
                const auto [cw, ch] = parse_pair(canvas, 'x', "--canvas");
                const auto [aw, ah] = parse_pair(arm, 'x', "--arm");
                const auto [bw, bh] = parse_pair(bar, 'x', "--bar");
                grid = isoridge::generate_h_shape({cw, ch, aw, ah, bw, bh});
            }
            else if (corridor->parsed())
                grid = isoridge::generate_corridor(corridor_length, corridor_margin);
            else
            {
                const auto [tw, th] = parse_pair(town_size, 'x', "--size");
                grid = isoridge::generate_town(tw, th, town_seed);
            }
            write_output(fixture_out, isoridge::write_occupancy(grid, binary));
            std::cerr << "wrote " << grid.width() << "x" << grid.height() << " raster (" << grid.open_count()
                      << " open cells) to " << fixture_out << "\n";
            return exit_ok;
        }

        const auto [sr, st] = parse_pair(suppress, ',', "--suppress");
        config.suppress_rho = sr;
        config.suppress_theta = st;
        config.emit = parse_emit(emit_list);

        const auto grid = isoridge::parse_occupancy(read_file(input), cutoff);
        if (min_length_text == "auto")
            config.min_length = isoridge::estimate_narrowest_street(grid);
        else
        {
            try
            {
                config.min_length = std::stod(min_length_text);
            }
            catch (const std::exception&)
            {
                throw isoridge::Error("malformed --min-length '" + min_length_text + "'");
            }
        }

        const auto result = isoridge::extract_axial_lines(grid, config);
        for (const auto& p : result.skipped)
            std::cerr << "warning: peak (rho=" << isoridge::fixed(p.rho, 3) << ", theta=" << isoridge::fixed(p.theta, 1)
                      << ") misses the image; skipped\n";
        const auto lines = isoridge::apply_length_threshold(result.lines, config.min_length);
        isoridge::emit(lines, result, grid, config, out_dir);
        std::cout << isoridge::lines_to_csv(lines);

        if (lines.empty())
        {
            std::cerr << "warning: no lines at or above min length " << config.min_length << "\n";
            return exit_empty;
        }
        return exit_ok;
    }
    catch (const std::exception& e)
    {
        std::cerr << "isoridge: " << e.what() << "\n";
        return exit_error;
    }
}
