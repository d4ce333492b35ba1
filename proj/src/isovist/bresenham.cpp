#include "voxshift/isovist/bresenham.hpp"

namespace voxshift::isovist {

std::vector<Coord> bresenham_line(Coord a, Coord b) {
    if (b < a) std::swap(a, b);
    std::vector<Coord> out;
    out.push_back(a);
    for_each_interior_cell(a, b, [&out](const Coord& c) {
        out.push_back(c);
        return true;
    });
    if (b != a) out.push_back(b);
    return out;
}

} // namespace voxshift::isovist
