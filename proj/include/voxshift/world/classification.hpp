#pragma once

#include "voxshift/coord.hpp"
#include "voxshift/world/voxel_world.hpp"

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace voxshift::world {

// Three independent block-type lists. A name may sit in any subset of them;
// names absent from a list are simply not members.
struct BlockClassification {
    std::set<std::string, std::less<>> transparent;
    std::set<std::string, std::less<>> enterable;
    std::set<std::string, std::less<>> standable;

    bool is_transparent(std::string_view name) const { return transparent.contains(name); }
    bool is_enterable(std::string_view name) const { return enterable.contains(name); }
    bool is_standable(std::string_view name) const { return standable.contains(name); }

    friend bool operator==(const BlockClassification&, const BlockClassification&) = default;
};

// Matches assets/classification.conf.
BlockClassification default_classification();

// Parses the `[transparent]` / `[enterable]` / `[standable]` text format.
// Throws FormatError carrying the 1-based line number.
BlockClassification parse_classification(std::string_view text);
BlockClassification load_classification(const std::filesystem::path& path);
std::string format_classification(const BlockClassification& c);

namespace flag {
inline constexpr std::uint8_t kTransparent = 1;
inline constexpr std::uint8_t kEnterable = 2;
inline constexpr std::uint8_t kStandable = 4;
} // namespace flag

// Per-cell classification bits for one world, resolved once so the hot
// visibility and movement loops never touch strings.
class FlagGrid {
public:
    FlagGrid(const VoxelWorld& world, const BlockClassification& classification);

    const VoxelWorld& world() const noexcept { return *world_; }

    std::uint8_t flags_at(const Coord& c) const noexcept {
        if (!world_->contains(c)) return kOutOfBounds;
        return cells_[world_->index_of(c)];
    }
    bool transparent(const Coord& c) const noexcept { return (flags_at(c) & flag::kTransparent) != 0; }
    bool enterable(const Coord& c) const noexcept { return (flags_at(c) & flag::kEnterable) != 0; }
    bool standable(const Coord& c) const noexcept { return (flags_at(c) & flag::kStandable) != 0; }

    // Blocks that bound a view: anything that is not transparent-and-enterable.
    // Out-of-bounds cells are never surfaces.
    bool surface(const Coord& c) const noexcept {
        if (!world_->contains(c)) return false;
        const auto f = cells_[world_->index_of(c)];
        return (f & (flag::kTransparent | flag::kEnterable)) != (flag::kTransparent | flag::kEnterable);
    }

    static constexpr std::uint8_t kOutOfBounds = flag::kTransparent;

private:
    const VoxelWorld* world_;
    std::vector<std::uint8_t> cells_;
};

} // namespace voxshift::world
