#pragma once

#include "voxshift/coord.hpp"
#include "voxshift/world/classification.hpp"
#include "voxshift/world/voxel_world.hpp"

#include <cstdint>
#include <vector>

namespace voxshift::isovist {

// Where a standing avatar's head can be: head and feet enterable, support
// standable.
struct Headspace {
    Coord head;

    Coord feet() const { return head + Coord{0, -1, 0}; }
    Coord support() const { return head + Coord{0, -2, 0}; }

    friend bool operator==(const Headspace&, const Headspace&) = default;
};

inline bool operator<(const Headspace& a, const Headspace& b) { return yzx_less(a.head, b.head); }

bool is_headspace(const world::FlagGrid& flags, const Coord& head);

// All headspaces sorted by (y, z, x).
std::vector<Headspace> enumerate_headspaces(const world::FlagGrid& flags);
std::vector<Headspace> enumerate_headspaces(const world::VoxelWorld& world,
                                            const world::BlockClassification& classification);

// Seeded random key of a location. Within a Y level, the sampled headspaces
// are those with the smallest keys, so the same location tends to be picked
// in a base world and in its generated counterpart.
std::uint64_t sample_key(const Coord& c, std::uint64_t seed);

// Per Y level, ceil(fraction * level count) headspaces chosen uniformly
// without replacement. Output sorted by (y, z, x). Input must be sorted.
std::vector<Headspace> subsample_headspaces(const std::vector<Headspace>& headspaces, double fraction,
                                            std::uint64_t seed);

} // namespace voxshift::isovist
