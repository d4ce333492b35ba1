#pragma once

#include "voxshift/errors.hpp"
#include "voxshift/isovist/isovist.hpp"
#include "voxshift/metrics/metrics.hpp"
#include "voxshift/pca/pca.hpp"
#include "voxshift/viz/plot.hpp"
#include "voxshift/world/classification.hpp"
#include "voxshift/world/generate.hpp"
#include "voxshift/world/voxel_world.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace voxshift::pipeline {

struct RunConfig {
    std::string base;
    std::vector<std::string> gen;
    std::string classify;  // empty: built-in defaults
    std::string model;     // empty: fit on base + generated rows
    int d = 256;
    int n = 32;
    double iso_fraction = 0.1;
    double pair_fraction = 0.02;
    double match_radius = 0.0;
    std::uint64_t seed = 0;
    std::size_t top_k = 5;
    unsigned workers = 0;  // 0: VOXSHIFT_WORKERS, then hardware concurrency
    std::string out = "out";
    std::string column_agg = "mean";
    std::optional<int> ground_y;

    // gen-toy
    world::Dims dims{64, 32, 64};
    int ground_height = 4;
    std::string ground_material = "grass";
    world::ToyGeneratorParams toy;

    void validate() const;
};

// Applies `key = value` lines (`#` comments) onto `config`. Keys match the
// long flag names with '-' or '_'. Throws FormatError with a line number.
void apply_config_text(RunConfig& config, std::string_view text);
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

unsigned resolve_workers(unsigned requested);

// Sizes of the raw isovist sets of one location, for debugging dumps.
struct SetCounts {
    std::size_t visible = 0;
    std::size_t support = 0;
    std::size_t perimeter = 0;
    std::size_t real_perimeter = 0;
    std::size_t reachable = 0;
    std::size_t sky = 0;
};

struct WorldAnalysis {
    std::string label;
    std::size_t headspace_count = 0;
    std::vector<metrics::LocatedMetrics> records;  // sampled headspaces, (y, z, x)
    std::vector<SetCounts> set_counts;             // index-aligned with records
};

// Tab-separated `x y z visible support perimeter real_perimeter reachable sky`
// with a header line. Debug output; the layout may change.
std::string format_set_counts(const WorldAnalysis& analysis);

// Enumerates, sub-samples per Y level and computes isovist metrics, one task
// per headspace.
WorldAnalysis analyze_world(const world::VoxelWorld& world, const world::BlockClassification& classification,
                            const isovist::IsovistConfig& config, double iso_fraction, std::uint64_t seed,
                            unsigned workers, std::string label = {});

// Most common head y over the world's headspaces (ties: lower); the
// default overlay threshold.
std::optional<int> common_ground_level(const world::VoxelWorld& world,
                                       const world::BlockClassification& classification);

// Subcommands. Each writes into config.out and reports to `log`.
void run_isovists(const RunConfig& config, std::ostream& log);
void run_pca_fit(const RunConfig& config, std::ostream& log);
void run_era(const RunConfig& config, std::ostream& log);
void run_overlay(const RunConfig& config, std::ostream& log);
void run_shift(const RunConfig& config, std::ostream& log);
void run_gen_toy(const RunConfig& config, std::ostream& log);

// Raised by run_shift when no sampled location could be paired.
class PairingError : public Error {
public:
    using Error::Error;
    const char* error_class() const noexcept override { return "pairing"; }
};

} // namespace voxshift::pipeline
