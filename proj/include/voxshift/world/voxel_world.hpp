#pragma once

#include "voxshift/coord.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace voxshift::world {

using PaletteIndex = std::uint16_t;

struct Dims {
    int sx = 0;
    int sy = 0;
    int sz = 0;

    friend constexpr bool operator==(const Dims&, const Dims&) = default;
    constexpr std::size_t volume() const {
        return static_cast<std::size_t>(sx) * static_cast<std::size_t>(sy) * static_cast<std::size_t>(sz);
    }
};

// Immutable dense block grid. Cells are stored x-fastest, then z, then y.
// A lookup outside [origin, origin + dims) yields std::nullopt, which every
// consumer treats as a transparent, non-enterable, non-standable block.
class VoxelWorld {
public:
    // Throws InvalidArgument when any invariant is violated.
    VoxelWorld(Coord origin, Dims dims, std::vector<std::string> palette, std::vector<PaletteIndex> grid);

    const Coord& origin() const noexcept { return origin_; }
    const Dims& dims() const noexcept { return dims_; }
    const std::vector<std::string>& palette() const noexcept { return palette_; }
    std::span<const PaletteIndex> grid() const noexcept { return grid_; }
    std::size_t volume() const noexcept { return grid_.size(); }

    bool contains(const Coord& c) const noexcept {
        return c.x >= origin_.x && c.y >= origin_.y && c.z >= origin_.z &&
               c.x < origin_.x + dims_.sx && c.y < origin_.y + dims_.sy && c.z < origin_.z + dims_.sz;
    }

    // Precondition: contains(c).
    std::size_t index_of(const Coord& c) const noexcept {
        const auto lx = static_cast<std::size_t>(c.x - origin_.x);
        const auto ly = static_cast<std::size_t>(c.y - origin_.y);
        const auto lz = static_cast<std::size_t>(c.z - origin_.z);
        return (ly * static_cast<std::size_t>(dims_.sz) + lz) * static_cast<std::size_t>(dims_.sx) + lx;
    }

    Coord coord_of(std::size_t index) const noexcept;

    std::optional<PaletteIndex> palette_index_at(const Coord& c) const noexcept {
        if (!contains(c)) return std::nullopt;
        return grid_[index_of(c)];
    }

    std::optional<std::string_view> block_at(const Coord& c) const noexcept {
        if (!contains(c)) return std::nullopt;
        return palette_[grid_[index_of(c)]];
    }

    std::optional<PaletteIndex> find_palette_entry(std::string_view name) const noexcept;

    friend bool operator==(const VoxelWorld&, const VoxelWorld&) = default;

private:
    Coord origin_;
    Dims dims_;
    std::vector<std::string> palette_;
    std::vector<PaletteIndex> grid_;
};

} // namespace voxshift::world
