#include "voxshift/world/voxel_world.hpp"

#include "voxshift/errors.hpp"

#include <algorithm>
#include <unordered_set>

namespace voxshift::world {

VoxelWorld::VoxelWorld(Coord origin, Dims dims, std::vector<std::string> palette, std::vector<PaletteIndex> grid)
    : origin_(origin), dims_(dims), palette_(std::move(palette)), grid_(std::move(grid)) {
    if (dims_.sx <= 0 || dims_.sy <= 0 || dims_.sz <= 0) {
        throw InvalidArgument("world dimensions must be positive");
    }
    if (grid_.size() != dims_.volume()) {
        throw InvalidArgument("grid length " + std::to_string(grid_.size()) + " does not match dims volume " +
                              std::to_string(dims_.volume()));
    }
    if (palette_.empty()) throw InvalidArgument("palette is empty");
    if (palette_.size() > 0x10000) throw InvalidArgument("palette has more than 65536 entries");
    std::unordered_set<std::string_view> seen;
    for (const auto& name : palette_) {
        if (name.empty()) throw InvalidArgument("palette entry is empty");
        if (!seen.insert(name).second) throw InvalidArgument("duplicate palette entry '" + name + "'");
    }
    const auto limit = palette_.size();
    const auto bad = std::find_if(grid_.begin(), grid_.end(), [limit](PaletteIndex v) { return v >= limit; });
    if (bad != grid_.end()) {
        throw InvalidArgument("grid value " + std::to_string(*bad) + " is not a palette index");
    }
}

Coord VoxelWorld::coord_of(std::size_t index) const noexcept {
    const auto sx = static_cast<std::size_t>(dims_.sx);
    const auto sz = static_cast<std::size_t>(dims_.sz);
    const auto lx = index % sx;
    const auto lz = (index / sx) % sz;
    const auto ly = index / (sx * sz);
    return {origin_.x + static_cast<int>(lx), origin_.y + static_cast<int>(ly), origin_.z + static_cast<int>(lz)};
}

std::optional<PaletteIndex> VoxelWorld::find_palette_entry(std::string_view name) const noexcept {
    for (std::size_t i = 0; i < palette_.size(); ++i) {
        if (palette_[i] == name) return static_cast<PaletteIndex>(i);
    }
    return std::nullopt;
}

} // namespace voxshift::world
