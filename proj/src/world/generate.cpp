#include "voxshift/world/generate.hpp"

#include "voxshift/errors.hpp"
#include "voxshift/sampling.hpp"

#include <algorithm>

namespace voxshift::world {

namespace {

bool is_air(std::string_view name) { return name == "air" || name == "cave_air"; }

bool overlaps_with_gap(const Footprint& a, const Footprint& b) {
    return a.x0 - 1 < b.x0 + b.width && b.x0 - 1 < a.x0 + a.width && a.z0 - 1 < b.z0 + b.depth &&
           b.z0 - 1 < a.z0 + a.depth;
}

int place_axis(Rng& rng, int origin, int extent, int size) {
    if (size >= extent) return origin;
    return rng.between(origin, origin + extent - size);
}

} // namespace

VoxelWorld generate_flat_world(Dims dims, int ground_height, const std::string& ground_material,
                               std::uint64_t /*seed*/) {
    if (dims.sx <= 0 || dims.sy <= 0 || dims.sz <= 0) throw InvalidArgument("world dimensions must be positive");
    if (ground_height <= 0 || ground_height >= dims.sy) {
        throw InvalidArgument("ground height must satisfy 0 < height < sy, got " + std::to_string(ground_height));
    }
    if (ground_material.empty() || ground_material == "air") {
        throw InvalidArgument("ground material must be a non-air block name");
    }
    std::vector<PaletteIndex> grid(dims.volume(), 0);
    const auto layer = static_cast<std::size_t>(dims.sx) * static_cast<std::size_t>(dims.sz);
    std::fill(grid.begin(), grid.begin() + static_cast<std::ptrdiff_t>(layer * static_cast<std::size_t>(ground_height)),
              PaletteIndex{1});
    return VoxelWorld({0, 0, 0}, dims, {"air", ground_material}, std::move(grid));
}

void ToyGeneratorParams::validate() const {
    if (structure_count < 0) throw InvalidArgument("structure count must be non-negative");
    if (footprint.min < 3 || footprint.min > footprint.max) {
        throw InvalidArgument("footprint range must satisfy 3 <= min <= max");
    }
    if (wall_height.min < 1 || wall_height.min > wall_height.max) {
        throw InvalidArgument("wall height range must satisfy 1 <= min <= max");
    }
    if (material.empty()) throw InvalidArgument("structure material must be named");
}

int column_surface(const VoxelWorld& world, int x, int z) {
    const auto& o = world.origin();
    for (int y = o.y + world.dims().sy - 1; y >= o.y; --y) {
        if (!is_air(*world.block_at({x, y, z}))) return y + 1;
    }
    return o.y;
}

std::vector<Footprint> plan_structures(const VoxelWorld& world, const ToyGeneratorParams& params) {
    params.validate();
    constexpr int kAttempts = 64;
    Rng rng(derive_seed(params.seed, 0x746F7967656EULL));
    const auto& o = world.origin();
    const auto& d = world.dims();

    std::vector<Footprint> placed;
    for (int s = 0; s < params.structure_count; ++s) {
        Footprint candidate;
        for (int attempt = 0; attempt < kAttempts; ++attempt) {
            candidate.width = rng.between(params.footprint.min, params.footprint.max);
            candidate.depth = rng.between(params.footprint.min, params.footprint.max);
            candidate.height = rng.between(params.wall_height.min, params.wall_height.max);
            candidate.x0 = place_axis(rng, o.x, d.sx, candidate.width);
            candidate.z0 = place_axis(rng, o.z, d.sz, candidate.depth);
            const bool clear = std::none_of(placed.begin(), placed.end(),
                                            [&](const Footprint& f) { return overlaps_with_gap(f, candidate); });
            if (clear) break;
        }
        placed.push_back(candidate);
    }
    return placed;
}

ToyResult apply_toy_generator(const VoxelWorld& world, const ToyGeneratorParams& params) {
    auto footprints = plan_structures(world, params);
    if (footprints.empty()) return {world, {}};

    auto palette = world.palette();
    PaletteIndex material = 0;
    if (const auto found = world.find_palette_entry(params.material)) {
        material = *found;
    } else {
        material = static_cast<PaletteIndex>(palette.size());
        palette.push_back(params.material);
    }

    std::vector<PaletteIndex> grid(world.grid().begin(), world.grid().end());
    const auto& o = world.origin();
    const int top = o.y + world.dims().sy;
    for (const auto& f : footprints) {
        for (int z = f.z0; z < f.z0 + f.depth; ++z) {
            for (int x = f.x0; x < f.x0 + f.width; ++x) {
                if (!f.on_ring(x, z) || !world.contains({x, o.y, z})) continue;
                const int base = column_surface(world, x, z);
                for (int y = base; y < std::min(top, base + f.height); ++y) grid[world.index_of({x, y, z})] = material;
            }
        }
    }
    return {VoxelWorld(o, world.dims(), std::move(palette), std::move(grid)), std::move(footprints)};
}

} // namespace voxshift::world
