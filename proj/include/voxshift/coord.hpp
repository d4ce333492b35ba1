#pragma once

#include <compare>
#include <cstdint>
#include <functional>

namespace voxshift {

// Integer block coordinate. The defaulted ordering is lexicographic on
// (x, y, z) and is the order rays are normalized in.
struct Coord {
    int x = 0;
    int y = 0;
    int z = 0;

    friend constexpr bool operator==(const Coord&, const Coord&) = default;
    friend constexpr auto operator<=>(const Coord&, const Coord&) = default;

    constexpr Coord operator+(const Coord& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Coord operator-(const Coord& o) const { return {x - o.x, y - o.y, z - o.z}; }
};

// Output ordering for every location list: y, then z, then x.
constexpr bool yzx_less(const Coord& a, const Coord& b) {
    if (a.y != b.y) return a.y < b.y;
    if (a.z != b.z) return a.z < b.z;
    return a.x < b.x;
}

struct YzxLess {
    constexpr bool operator()(const Coord& a, const Coord& b) const { return yzx_less(a, b); }
};

constexpr std::int64_t dist2(const Coord& a, const Coord& b) {
    const std::int64_t dx = a.x - b.x;
    const std::int64_t dy = a.y - b.y;
    const std::int64_t dz = a.z - b.z;
    return dx * dx + dy * dy + dz * dz;
}

struct Vec3d {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend constexpr bool operator==(const Vec3d&, const Vec3d&) = default;
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr bool operator==(const Point2&, const Point2&) = default;
};

struct CoordHash {
    std::size_t operator()(const Coord& c) const noexcept {
        std::uint64_t h = static_cast<std::uint32_t>(c.x);
        h = h * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint32_t>(c.y);
        h = h * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint32_t>(c.z);
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

} // namespace voxshift
