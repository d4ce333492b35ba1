#include "voxshift/errors.hpp"
#include "voxshift/viz/plot.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace voxshift::viz {

namespace detail {
extern const char* const kViridisText;
}

const ColorRamp& viridis() {
    static const ColorRamp ramp = parse_ramp(detail::kViridisText);
    return ramp;
}

ColorRamp parse_ramp(std::string_view text) {
    ColorRamp ramp{};
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t count = 0;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        int r = 0, g = 0, b = 0;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (!(fields >> r >> g >> b) || r < 0 || g < 0 || b < 0 || r > 255 || g > 255 || b > 255) {
            throw FormatError("colour ramp line is not 'r g b' in 0..255", line_no);
        }
        if (count == ramp.size()) throw FormatError("colour ramp has more than 256 entries", line_no);
        ramp[count++] = {static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g), static_cast<std::uint8_t>(b)};
    }
    if (count != ramp.size()) throw FormatError("colour ramp has fewer than 256 entries", line_no);
    return ramp;
}

double ramp_position(const ColorRamp& ramp, const Rgb& color) {
    double sum = 0.0;
    int matches = 0;
    for (std::size_t i = 0; i < ramp.size(); ++i) {
        if (ramp[i] == color) {
            sum += static_cast<double>(i);
            ++matches;
        }
    }
    if (matches > 0) return sum / matches;
    std::size_t best = 0;
    int best_d = std::numeric_limits<int>::max();
    for (std::size_t i = 0; i < ramp.size(); ++i) {
        const int dr = ramp[i].r - color.r;
        const int dg = ramp[i].g - color.g;
        const int db = ramp[i].b - color.b;
        const int d = dr * dr + dg * dg + db * db;
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return static_cast<double>(best);
}

} // namespace voxshift::viz
