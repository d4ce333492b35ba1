#pragma once

#include "voxshift/world/voxel_world.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace voxshift::world {

// Every block below `ground_height` (relative to origin y = 0) is
// `ground_material`, everything above is "air". The seed does not change a
// flat world; it is carried so generated worlds share one signature.
VoxelWorld generate_flat_world(Dims dims, int ground_height, const std::string& ground_material,
                               std::uint64_t seed);

struct IntRange {
    int min = 0;
    int max = 0;
};

struct ToyGeneratorParams {
    int structure_count = 4;
    IntRange footprint{5, 9};
    IntRange wall_height{3, 5};
    std::string material = "bricks";
    std::uint64_t seed = 0;

    void validate() const;
};

// One placed structure: a hollow ring of walls around the rectangle
// [x0, x0 + width) x [z0, z0 + depth), open at the top.
struct Footprint {
    int x0 = 0;
    int z0 = 0;
    int width = 0;
    int depth = 0;
    int height = 0;

    bool on_ring(int x, int z) const {
        if (x < x0 || z < z0 || x >= x0 + width || z >= z0 + depth) return false;
        return x == x0 || z == z0 || x == x0 + width - 1 || z == z0 + depth - 1;
    }
    bool covers(int x, int z) const { return x >= x0 && z >= z0 && x < x0 + width && z < z0 + depth; }

    friend bool operator==(const Footprint&, const Footprint&) = default;
};

// Surface height of a column: one above its topmost block that is not
// "air" or "cave_air"; origin y when the column is empty.
int column_surface(const VoxelWorld& world, int x, int z);

// Seeded placement, without touching the world. Placements keep a one-block
// gap from each other when a free spot exists; rings are clipped to bounds.
std::vector<Footprint> plan_structures(const VoxelWorld& world, const ToyGeneratorParams& params);

struct ToyResult {
    VoxelWorld world;
    std::vector<Footprint> footprints;
};

// Returns a new world with the planned structures built; the input is not
// modified. Wall columns start at the column surface of the input world.
ToyResult apply_toy_generator(const VoxelWorld& world, const ToyGeneratorParams& params);

} // namespace voxshift::world
