#include "voxshift/isovist/headspace.hpp"

#include "voxshift/sampling.hpp"

#include <algorithm>

namespace voxshift::isovist {

bool is_headspace(const world::FlagGrid& flags, const Coord& head) {
    return flags.enterable(head) && flags.enterable(head + Coord{0, -1, 0}) &&
           flags.standable(head + Coord{0, -2, 0});
}

std::vector<Headspace> enumerate_headspaces(const world::FlagGrid& flags) {
    const auto& w = flags.world();
    const auto& o = w.origin();
    const auto& d = w.dims();
    std::vector<Headspace> out;
    for (int y = o.y + 2; y < o.y + d.sy; ++y) {
        for (int z = o.z; z < o.z + d.sz; ++z) {
            for (int x = o.x; x < o.x + d.sx; ++x) {
                if (is_headspace(flags, {x, y, z})) out.push_back({{x, y, z}});
            }
        }
    }
    return out;
}

std::vector<Headspace> enumerate_headspaces(const world::VoxelWorld& world,
                                            const world::BlockClassification& classification) {
    return enumerate_headspaces(world::FlagGrid(world, classification));
}

std::uint64_t sample_key(const Coord& c, std::uint64_t seed) {
    std::uint64_t h = derive_seed(seed, 0x69736F73616DULL);
    h = splitmix64(h ^ static_cast<std::uint32_t>(c.x));
    h = splitmix64(h ^ static_cast<std::uint32_t>(c.y));
    h = splitmix64(h ^ static_cast<std::uint32_t>(c.z));
    return h;
}

std::vector<Headspace> subsample_headspaces(const std::vector<Headspace>& headspaces, double fraction,
                                            std::uint64_t seed) {
    sample_size(fraction, 0);  // validates the fraction even for empty input
    std::vector<Headspace> out;
    std::vector<std::pair<std::uint64_t, std::size_t>> keyed;
    std::size_t level_begin = 0;
    while (level_begin < headspaces.size()) {
        const int y = headspaces[level_begin].head.y;
        std::size_t level_end = level_begin;
        keyed.clear();
        while (level_end < headspaces.size() && headspaces[level_end].head.y == y) {
            keyed.emplace_back(sample_key(headspaces[level_end].head, seed), level_end);
            ++level_end;
        }
        const auto take = sample_size(fraction, keyed.size());
        std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(take), keyed.end());
        keyed.resize(take);
        std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
        for (const auto& k : keyed) out.push_back(headspaces[k.second]);
        level_begin = level_end;
    }
    return out;
}

} // namespace voxshift::isovist
