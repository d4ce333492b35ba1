#include "voxshift/isovist/isovist.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <unordered_set>

namespace voxshift::isovist {

namespace {

constexpr std::array<Coord, 4> kLateral{{{1, 0, 0}, {-1, 0, 0}, {0, 0, 1}, {0, 0, -1}}};

// Support block reached by moving from `from` one column along `dir`, or
// nothing if the move is not allowed.
std::optional<Coord> lateral_move(const world::FlagGrid& flags, const Coord& from, const Coord& dir) {
    const Coord col = from + dir;
    const Coord up = col + Coord{0, 1, 0};
    if (flags.standable(up) && flags.enterable(up + Coord{0, 1, 0}) && flags.enterable(up + Coord{0, 2, 0}) &&
        flags.enterable(from + Coord{0, 3, 0})) {
        return up;
    }
    if (!flags.enterable(col + Coord{0, 1, 0}) || !flags.enterable(col + Coord{0, 2, 0})) return std::nullopt;
    Coord land = col;
    while (!flags.standable(land) && flags.enterable(land)) land.y -= 1;
    if (!flags.standable(land)) return std::nullopt;
    return land;
}

} // namespace

std::vector<Coord> reachable_set(const world::FlagGrid& flags, const Coord& start, int step_budget) {
    std::unordered_set<Coord, CoordHash> seen{start};
    std::vector<Coord> frontier{start};
    std::vector<Coord> next;
    for (int step = 0; step < step_budget && !frontier.empty(); ++step) {
        next.clear();
        for (const auto& from : frontier) {
            for (const auto& dir : kLateral) {
                const auto to = lateral_move(flags, from, dir);
                if (to && seen.insert(*to).second) next.push_back(*to);
            }
        }
        frontier.swap(next);
    }
    std::vector<Coord> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), YzxLess{});
    return out;
}

std::vector<Coord> reachable_set(const world::VoxelWorld& world, const Coord& start,
                                 const world::BlockClassification& classification, int step_budget) {
    return reachable_set(world::FlagGrid(world, classification), start, step_budget);
}

} // namespace voxshift::isovist
