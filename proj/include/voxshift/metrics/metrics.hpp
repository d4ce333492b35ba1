#pragma once

#include "voxshift/coord.hpp"
#include "voxshift/isovist/headspace.hpp"
#include "voxshift/isovist/isovist.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace voxshift::metrics {

inline constexpr std::size_t kMetricCount = 13;
using MetricRow = std::array<double, kMetricCount>;

// Column order used by every matrix, CSV and model file.
inline constexpr std::array<const char*, kMetricCount> kMetricNames{
    "area",        "perimeter",    "diversity",   "var_radials",  "mean_radials",
    "roundness",   "openness",     "clutter",     "reachability", "occlusivity",
    "drift_length", "vista_length", "real_perimeter_size"};

struct IsovistMetrics {
    std::size_t area = 0;
    std::size_t perimeter = 0;
    std::size_t diversity = 0;
    double var_radials = 0.0;
    double mean_radials = 0.0;
    double roundness = 0.0;
    double openness = 0.0;
    double clutter = 0.0;
    std::size_t reachability = 0;
    double occlusivity = 0.0;
    double drift_length = 0.0;
    double vista_length = 0.0;
    std::size_t real_perimeter_size = 0;
    // Set when some ratio or radial statistic hit a zero denominator and was
    // reported as 0.
    bool degenerate = false;

    MetricRow as_row() const;
    friend bool operator==(const IsovistMetrics&, const IsovistMetrics&) = default;
};

// Area |H|, Perimeter |P|, Diversity c(P), Real perimeter |Pr|,
// Roundness Area/Perimeter, Openness Area/RealPerimeter, Reachability |R|,
// Occlusivity |R ∩ H-2| / |R|, Clutter |H-2 ∩ P| / Area (coordinates only).
// Radial statistics run over block radials plus length-d sky radials:
// population variance, mean, max (vista); drift is the distance from the
// head to the mean radial endpoint. Zero denominators give 0.
IsovistMetrics compute_metrics(const isovist::IsovistSets& sets);

struct LocatedMetrics {
    isovist::Headspace location;
    IsovistMetrics metrics;
};

struct MetricsMatrix {
    std::vector<MetricRow> rows;
    std::vector<Coord> heads;  // row index -> centroid head
};

// Rows ordered by (y, z, x) of the head. Throws InvalidArgument when empty.
MetricsMatrix metrics_matrix(std::span<const LocatedMetrics> records);

// `x,y,z,<13 metrics>,degenerate`, floats with 9 significant digits.
std::string metrics_csv_header();
std::string format_metrics_csv(std::span<const LocatedMetrics> records);
// Inverse of format_metrics_csv. Throws FormatError with a line number.
std::vector<LocatedMetrics> parse_metrics_csv(std::string_view text);

} // namespace voxshift::metrics
