#include "voxshift/isovist/isovist.hpp"

#include "voxshift/errors.hpp"
#include "voxshift/isovist/bresenham.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace voxshift::isovist {

namespace {

std::int64_t isqrt(std::int64_t v) {
    auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
    while (s * s > v) --s;
    while ((s + 1) * (s + 1) <= v) ++s;
    return s;
}

struct Span {
    int lo = 0;
    int hi = -1;
    bool empty() const { return lo > hi; }
};

// Y extent of the d-ball clipped to the world box in column (x, z).
Span column_span(const world::VoxelWorld& w, const Coord& head, std::int64_t d2, int x, int z) {
    const auto& o = w.origin();
    const auto& dims = w.dims();
    if (x < o.x || z < o.z || x >= o.x + dims.sx || z >= o.z + dims.sz) return {};
    const std::int64_t hx = x - head.x;
    const std::int64_t hz = z - head.z;
    const std::int64_t rest = d2 - hx * hx - hz * hz;
    if (rest < 0) return {};
    const auto r = isqrt(rest);
    const auto lo = std::max<std::int64_t>(o.y, head.y - r);
    const auto hi = std::min<std::int64_t>(o.y + dims.sy - 1, head.y + r);
    return {static_cast<int>(lo), static_cast<int>(hi)};
}

// Cells of the clipped ball that have a 6-neighbour outside it.
template <class Fn>
void for_each_shell_cell(const world::VoxelWorld& w, const Coord& head, int d, Fn&& fn) {
    const std::int64_t d2 = static_cast<std::int64_t>(d) * d;
    const auto& o = w.origin();
    const auto& dims = w.dims();
    const int x_lo = std::max(o.x, head.x - d);
    const int x_hi = std::min(o.x + dims.sx - 1, head.x + d);
    const int z_lo = std::max(o.z, head.z - d);
    const int z_hi = std::min(o.z + dims.sz - 1, head.z + d);

    std::vector<Span> parts;
    for (int z = z_lo; z <= z_hi; ++z) {
        for (int x = x_lo; x <= x_hi; ++x) {
            const Span col = column_span(w, head, d2, x, z);
            if (col.empty()) continue;
            parts.clear();
            parts.push_back({col.lo, col.lo});
            parts.push_back({col.hi, col.hi});
            const Coord nbrs[4] = {{x + 1, 0, z}, {x - 1, 0, z}, {x, 0, z + 1}, {x, 0, z - 1}};
            for (const auto& n : nbrs) {
                const Span ns = column_span(w, head, d2, n.x, n.z);
                if (ns.empty()) {
                    parts.push_back(col);
                    continue;
                }
                parts.push_back({col.lo, std::min(col.hi, ns.lo - 1)});
                parts.push_back({std::max(col.lo, ns.hi + 1), col.hi});
            }
            std::sort(parts.begin(), parts.end(), [](const Span& a, const Span& b) { return a.lo < b.lo; });
            int next_y = col.lo;
            for (const auto& p : parts) {
                if (p.empty()) continue;
                for (int y = std::max(p.lo, next_y); y <= p.hi; ++y) fn(Coord{x, y, z});
                next_y = std::max(next_y, p.hi + 1);
            }
        }
    }
}

} // namespace

void IsovistConfig::validate() const {
    if (view_distance < 1) throw InvalidArgument("view distance d must be >= 1");
    if (step_budget < 0) throw InvalidArgument("step budget n must be >= 0");
}

bool visible(const world::FlagGrid& flags, const Coord& from, const Coord& to, int view_distance) {
    if (dist2(from, to) > static_cast<std::int64_t>(view_distance) * view_distance) return false;
    return for_each_interior_cell(from, to, [&flags](const Coord& c) { return flags.transparent(c); });
}

bool visible(const world::VoxelWorld& world, const Coord& from, const Coord& to,
             const world::BlockClassification& classification, int view_distance) {
    return visible(world::FlagGrid(world, classification), from, to, view_distance);
}

IsovistContext::IsovistContext(const world::VoxelWorld& world, const world::BlockClassification& classification)
    : flags_(world, classification), headspaces_(enumerate_headspaces(flags_)) {
    const auto& o = world.origin();
    const auto& d = world.dims();
    for (int y = o.y; y < o.y + d.sy; ++y) {
        for (int z = o.z; z < o.z + d.sz; ++z) {
            for (int x = o.x; x < o.x + d.sx; ++x) {
                const Coord c{x, y, z};
                if (!flags_.surface(c)) continue;
                bool exposed = false;
                for (int dy = -1; dy <= 1 && !exposed; ++dy) {
                    for (int dz = -1; dz <= 1 && !exposed; ++dz) {
                        for (int dx = -1; dx <= 1 && !exposed; ++dx) {
                            if ((dx | dy | dz) != 0 && flags_.transparent(c + Coord{dx, dy, dz})) exposed = true;
                        }
                    }
                }
                if (exposed) exposed_.push_back(c);
            }
        }
    }
}

IsovistSets compute_isovist(const IsovistContext& context, const Headspace& hs, const IsovistConfig& config) {
    config.validate();
    const auto& flags = context.flags();
    const auto& w = context.world();
    const Coord head = hs.head;
    const int d = config.view_distance;
    const std::int64_t d2 = static_cast<std::int64_t>(d) * d;
    const auto clear_to = [&](const Coord& to) {
        return for_each_interior_cell(head, to, [&flags](const Coord& c) { return flags.transparent(c); });
    };

    IsovistSets sets;
    sets.centroid = hs;
    sets.view_distance = d;

    for (const auto& other : context.headspaces()) {
        if (dist2(head, other.head) <= d2 && clear_to(other.head)) {
            sets.visible_headspaces.push_back(other.head);
            sets.support_blocks.push_back(other.support());
        }
    }

    // Exposed surfaces plus the head's own neighbours, which need no
    // transparent cell in between.
    std::vector<Coord> candidates;
    for (const auto& c : context.exposed_surfaces()) {
        if (c != head && dist2(head, c) <= d2) candidates.push_back(c);
    }
    for (int dy = -1; dy <= 1; ++dy) {
        for (int dz = -1; dz <= 1; ++dz) {
            for (int dx = -1; dx <= 1; ++dx) {
                const Coord c = head + Coord{dx, dy, dz};
                if ((dx | dy | dz) != 0 && flags.surface(c) && dist2(head, c) <= d2) candidates.push_back(c);
            }
        }
    }
    std::sort(candidates.begin(), candidates.end(), YzxLess{});
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (const auto& c : candidates) {
        if (!clear_to(c)) continue;
        const PerimeterBlock block{c, *w.palette_index_at(c)};
        sets.perimeter.push_back(block);
        if (!flags.transparent(c)) sets.real_perimeter.push_back(block);
        sets.radials.push_back(std::sqrt(static_cast<double>(dist2(head, c))));
        sets.radial_endpoints.push_back({static_cast<double>(c.x), static_cast<double>(c.y), static_cast<double>(c.z)});
    }

    std::vector<Coord> sky;
    for_each_shell_cell(w, head, d, [&](const Coord& c) {
        if (c == head || flags.surface(c) || !flags.enterable(c)) return;
        if (clear_to(c)) sky.push_back(c);
    });
    std::sort(sky.begin(), sky.end(), YzxLess{});
    for (const auto& c : sky) {
        const Coord delta = c - head;
        const double scale = static_cast<double>(d) / std::sqrt(static_cast<double>(dist2(c, head)));
        sets.sky_endpoints.push_back({head.x + delta.x * scale, head.y + delta.y * scale, head.z + delta.z * scale});
    }

    sets.reachable = reachable_set(flags, hs.support(), config.step_budget);
    return sets;
}

} // namespace voxshift::isovist
