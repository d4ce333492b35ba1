#pragma once

#include "voxshift/coord.hpp"
#include "voxshift/isovist/headspace.hpp"
#include "voxshift/world/classification.hpp"
#include "voxshift/world/voxel_world.hpp"

#include <cstddef>
#include <vector>

namespace voxshift::isovist {

struct IsovistConfig {
    int view_distance = 256;  // d
    int step_budget = 32;     // n

    void validate() const;
};

// True iff |from - to| <= d and every cell strictly between them on the
// Bresenham line is transparent. The endpoints' own blocks do not matter.
bool visible(const world::FlagGrid& flags, const Coord& from, const Coord& to, int view_distance);
bool visible(const world::VoxelWorld& world, const Coord& from, const Coord& to,
             const world::BlockClassification& classification, int view_distance);

// Breadth-first walk over support blocks from `start`, at most `step_budget`
// lateral moves. Per move into one of the 4 lateral columns:
//  - step up one block when the target is standable with two enterable
//    blocks above it and the block above the source head is enterable;
//  - otherwise walk in when the two body cells at source level are
//    enterable, then fall to the first standable (or non-enterable) block
//    below; the move is valid only if that block is standable.
// Sorted by (y, z, x); always contains `start`.
std::vector<Coord> reachable_set(const world::FlagGrid& flags, const Coord& start, int step_budget);
std::vector<Coord> reachable_set(const world::VoxelWorld& world, const Coord& start,
                                 const world::BlockClassification& classification, int step_budget);

struct PerimeterBlock {
    Coord coord;
    world::PaletteIndex block = 0;

    friend bool operator==(const PerimeterBlock&, const PerimeterBlock&) = default;
};

// Raw per-location sets. All coordinate lists are sorted by (y, z, x).
//
// `perimeter` holds every visible surface block (not transparent-and-
// enterable) within d, excluding the head itself; `real_perimeter` is the
// subset that is also non-transparent, so glass counts for the former only.
// `radials[i]` is the centre-to-centre length to `perimeter[i]`.
//
// Rays that end on open space instead (a visible transparent-and-enterable
// cell on the boundary of the d-ball clipped to the world box) are sky
// terminations: each one is a radial of length d whose endpoint is the
// point at distance d along that direction, kept in `sky_endpoints`.
struct IsovistSets {
    Headspace centroid;
    int view_distance = 0;
    std::vector<Coord> visible_headspaces;
    std::vector<Coord> support_blocks;
    std::vector<PerimeterBlock> perimeter;
    std::vector<PerimeterBlock> real_perimeter;
    std::vector<Coord> reachable;
    std::vector<double> radials;
    std::vector<Vec3d> radial_endpoints;
    std::vector<Vec3d> sky_endpoints;

    std::size_t sky_count() const { return sky_endpoints.size(); }
    double sky_length() const { return static_cast<double>(view_distance); }
};

// Per-world data shared by every isovist of that world: the classified
// grid, all headspaces, and the surface blocks that can be seen at all.
class IsovistContext {
public:
    IsovistContext(const world::VoxelWorld& world, const world::BlockClassification& classification);

    IsovistContext(const IsovistContext&) = delete;
    IsovistContext& operator=(const IsovistContext&) = delete;

    const world::VoxelWorld& world() const noexcept { return flags_.world(); }
    const world::FlagGrid& flags() const noexcept { return flags_; }
    const std::vector<Headspace>& headspaces() const noexcept { return headspaces_; }

    // Surface blocks with at least one transparent 26-neighbour, sorted by
    // (y, z, x). Any surface block seen through at least one interior cell
    // is one of these.
    const std::vector<Coord>& exposed_surfaces() const noexcept { return exposed_; }

private:
    world::FlagGrid flags_;
    std::vector<Headspace> headspaces_;
    std::vector<Coord> exposed_;
};

IsovistSets compute_isovist(const IsovistContext& context, const Headspace& hs, const IsovistConfig& config);

} // namespace voxshift::isovist
