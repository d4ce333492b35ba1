#include "voxshift/world/classification.hpp"

#include "voxshift/errors.hpp"

#include <fstream>
#include <sstream>

namespace voxshift::world {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace

BlockClassification default_classification() {
    BlockClassification c;
    c.transparent = {"air", "cave_air", "glass"};
    c.enterable = {"air", "cave_air"};
    c.standable = {"stone", "dirt", "grass", "planks", "bricks"};
    return c;
}

BlockClassification parse_classification(std::string_view text) {
    BlockClassification result;
    std::set<std::string, std::less<>>* section = nullptr;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        auto line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line == "[transparent]") section = &result.transparent;
            else if (line == "[enterable]") section = &result.enterable;
            else if (line == "[standable]") section = &result.standable;
            else throw FormatError("unknown classification section '" + std::string(line) + "'", line_no);
            continue;
        }
        if (section == nullptr) {
            throw FormatError("block name '" + std::string(line) + "' outside any section", line_no);
        }
        if (line.find_first_of(" \t") != std::string_view::npos) {
            throw FormatError("block name '" + std::string(line) + "' contains whitespace", line_no);
        }
        section->emplace(line);
    }
    return result;
}

BlockClassification load_classification(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open classification file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_classification(buf.str());
}

std::string format_classification(const BlockClassification& c) {
    std::string out;
    const auto emit = [&out](const char* header, const auto& names) {
        out += header;
        out += '\n';
        for (const auto& n : names) {
            out += n;
            out += '\n';
        }
    };
    emit("[transparent]", c.transparent);
    emit("[enterable]", c.enterable);
    emit("[standable]", c.standable);
    return out;
}

FlagGrid::FlagGrid(const VoxelWorld& world, const BlockClassification& classification) : world_(&world) {
    std::vector<std::uint8_t> palette_flags;
    palette_flags.reserve(world.palette().size());
    for (const auto& name : world.palette()) {
        std::uint8_t f = 0;
        if (classification.is_transparent(name)) f |= flag::kTransparent;
        if (classification.is_enterable(name)) f |= flag::kEnterable;
        if (classification.is_standable(name)) f |= flag::kStandable;
        palette_flags.push_back(f);
    }
    const auto grid = world.grid();
    cells_.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) cells_[i] = palette_flags[grid[i]];
}

} // namespace voxshift::world
