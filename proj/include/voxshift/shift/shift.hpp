#pragma once

#include "voxshift/coord.hpp"
#include "voxshift/metrics/metrics.hpp"
#include "voxshift/pca/pca.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace voxshift::shift {

using metrics::IsovistMetrics;
using metrics::LocatedMetrics;

struct LocationPair {
    Coord base_head;
    Coord gen_head;
    IsovistMetrics base_metrics;
    IsovistMetrics gen_metrics;
};

struct PairingResult {
    std::vector<LocationPair> pairs;  // ordered by base head (y, z, x)
    std::size_t sampled = 0;
    std::size_t dropped = 0;
};

// Samples ceil(fraction * |base|) base locations and matches each to an
// unused generated headspace: same (x, z) column with minimal |dy| (ties:
// lower y) first; otherwise, when match_radius > 0, the nearest one within
// that Euclidean radius (ties: (y, z, x)). Samples are matched in (y, z, x)
// order so no generated headspace is used twice. Unmatched samples are
// dropped and counted.
PairingResult pair_locations(std::span<const LocatedMetrics> base, std::span<const LocatedMetrics> gen,
                             double fraction, double match_radius, std::uint64_t seed);

struct ShiftRecord {
    LocationPair pair;
    Point2 pre;
    Point2 post;
    Point2 delta;
    double magnitude = 0.0;
};

// Projects both sides onto the first two components. Output keeps input order.
std::vector<ShiftRecord> compute_shift(std::span<const LocationPair> pairs, const pca::PcaModel& model);

// The k largest magnitudes, descending; ties by base head (y, z, x).
std::vector<ShiftRecord> top_k_shifts(std::span<const ShiftRecord> records, std::size_t k);

struct ShiftSummary {
    std::size_t count = 0;
    std::size_t dropped = 0;
    double mean_magnitude = 0.0;
    double median_magnitude = 0.0;
    double max_magnitude = 0.0;
    Point2 mean_delta;
};

// Throws InvalidArgument for an empty record list.
ShiftSummary shift_summary(std::span<const ShiftRecord> records, std::size_t dropped);

std::string format_shift_csv(std::span<const ShiftRecord> records);
// `key: value` lines.
std::string format_summary(const ShiftSummary& summary);

} // namespace voxshift::shift
