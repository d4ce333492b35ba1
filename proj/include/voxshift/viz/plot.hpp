#pragma once

#include "voxshift/coord.hpp"
#include "voxshift/isovist/headspace.hpp"
#include "voxshift/shift/shift.hpp"
#include "voxshift/world/voxel_world.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace voxshift::viz {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

using ColorRamp = std::array<Rgb, 256>;

// The viridis table shipped in assets/viridis.txt.
const ColorRamp& viridis();
// 256 lines of "r g b". Throws FormatError with a line number.
ColorRamp parse_ramp(std::string_view text);

// Overlay cells with no qualifying headspace. Not a viridis colour.
inline constexpr Rgb kNoDataColor{255, 255, 255};
inline constexpr Rgb kHighlightColor{220, 20, 20};

struct AxisRange {
    double min = 0.0;
    double max = 1.0;
};

struct PlotSpec {
    int width = 800;
    int height = 800;
    std::optional<AxisRange> x_range;
    std::optional<AxisRange> y_range;
    std::size_t highlight_count = 5;
    std::string title;

    void validate() const;
};

// Data -> canvas mapping shared by every vector plot. The plot box is the
// canvas inset by `kMargin` on each side; y grows upward in data space.
struct AxisTransform {
    static constexpr double kMargin = 50.0;

    AxisRange x;
    AxisRange y;
    double width = 0.0;
    double height = 0.0;

    Point2 to_canvas(const Point2& p) const;
    Point2 to_data(const Point2& canvas) const;
};

// Auto range: data bounds (a zero-width bound widens to +-0.5) padded by 5%
// of the span on each side. Explicit ranges in `spec` win.
AxisTransform make_transform(std::span<const Point2> points, const PlotSpec& spec);

// One circle per point. Throws InvalidArgument on empty or non-finite input
// (the message names the offending index).
std::string render_era_scatter(std::span<const Point2> points, const PlotSpec& spec);

// One line from pre to post per record; the top-k by magnitude are drawn
// last in the highlight colour with class "arrow hl".
std::string render_flow_plot(std::span<const shift::ShiftRecord> records, const PlotSpec& spec);

struct RasterImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel
    std::string comment;            // one header comment line, may be empty

    Rgb pixel(int x, int y) const;
    std::string to_ppm() const;  // binary P6
};

RasterImage parse_ppm(std::string_view bytes);

enum class ColumnAgg { Mean, Highest };

struct ProjectedHeadspace {
    isovist::Headspace location;
    Point2 pc;
};

struct OverlayResult {
    RasterImage image;
    double value_min = 0.0;
    double value_max = 0.0;
    std::vector<std::optional<double>> values;  // per pixel, row-major
};

// One pixel per (x, z) column: pixel (x - ox, z - oz). The column value is
// the mean PC-1 of its headspaces with head.y >= ground_threshold (or the
// PC-1 of the highest one), mapped linearly from [min, max] of all column
// values onto the ramp; a constant field maps to the middle entry. The
// image comment records the range as `pc1-min=<v> pc1-max=<v>`.
OverlayResult render_overlay(const world::VoxelWorld& world, std::span<const ProjectedHeadspace> projected,
                             int ground_threshold, const PlotSpec& spec, ColumnAgg agg = ColumnAgg::Mean,
                             const ColorRamp& ramp = viridis());

// Ramp position of a colour (mean of matching entries, else the nearest).
double ramp_position(const ColorRamp& ramp, const Rgb& color);

} // namespace voxshift::viz
