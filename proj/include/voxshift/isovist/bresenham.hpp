#pragma once

#include "voxshift/coord.hpp"

#include <cstdlib>
#include <utility>
#include <vector>

namespace voxshift::isovist {

// Visits the cells strictly between `a` and `b` on the integer 3D Bresenham
// line, stopping as soon as `visit` returns false. The walk always starts
// from the lexicographically smaller endpoint, so the visited set does not
// depend on argument order. Returns true when every interior cell was
// accepted.
//
// The driving axis is the one with the largest |delta| (ties: x, then y).
// A minor coordinate advances when its error term reaches zero, i.e. minor
// offsets round half away from the start point.
template <class Visit>
bool for_each_interior_cell(Coord a, Coord b, Visit&& visit) {
    if (b < a) std::swap(a, b);
    const int dx = std::abs(b.x - a.x);
    const int dy = std::abs(b.y - a.y);
    const int dz = std::abs(b.z - a.z);
    const int sx = b.x > a.x ? 1 : (b.x < a.x ? -1 : 0);
    const int sy = b.y > a.y ? 1 : (b.y < a.y ? -1 : 0);
    const int sz = b.z > a.z ? 1 : (b.z < a.z ? -1 : 0);

    // Rename axes so that `major` drives; m1/m2 are the minor axes.
    int* pm;
    int* p1;
    int* p2;
    int dmaj, d1, d2, smaj, s1, s2;
    Coord c = a;
    if (dx >= dy && dx >= dz) {
        pm = &c.x; p1 = &c.y; p2 = &c.z;
        dmaj = dx; d1 = dy; d2 = dz; smaj = sx; s1 = sy; s2 = sz;
    } else if (dy >= dz) {
        pm = &c.y; p1 = &c.x; p2 = &c.z;
        dmaj = dy; d1 = dx; d2 = dz; smaj = sy; s1 = sx; s2 = sz;
    } else {
        pm = &c.z; p1 = &c.x; p2 = &c.y;
        dmaj = dz; d1 = dx; d2 = dy; smaj = sz; s1 = sx; s2 = sy;
    }

    long e1 = 2L * d1 - dmaj;
    long e2 = 2L * d2 - dmaj;
    for (int step = 1; step < dmaj; ++step) {
        *pm += smaj;
        if (e1 >= 0) {
            *p1 += s1;
            e1 -= 2L * dmaj;
        }
        if (e2 >= 0) {
            *p2 += s2;
            e2 -= 2L * dmaj;
        }
        e1 += 2L * d1;
        e2 += 2L * d2;
        if (!visit(static_cast<const Coord&>(c))) return false;
    }
    return true;
}

// The full line from min(a, b) to max(a, b), endpoints included.
std::vector<Coord> bresenham_line(Coord a, Coord b);

} // namespace voxshift::isovist
