#include "oracle.hpp"

#include "voxshift/errors.hpp"
#include "voxshift/pipeline/pipeline.hpp"
#include "voxshift/viz/plot.hpp"
#include "voxshift/world/generate.hpp"
#include "voxshift/world/voxgrid.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

namespace fs = std::filesystem;
using namespace voxshift;
using namespace voxshift::pipeline;

namespace {

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / "voxshift_pipeline_test" / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t data_rows(const fs::path& csv) {
    std::istringstream in(slurp(csv));
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) n += !line.empty();
    return n - 1;
}

struct CliResult {
    int status;
    std::string out;
    std::string err;
};

CliResult cli(const std::string& args, const fs::path& dir) {
    const char* exe = std::getenv("VOXSHIFT_CLI");
    REQUIRE(exe != nullptr);
    const auto out = dir / "stdout.txt";
    const auto err = dir / "stderr.txt";
    const std::string cmd = std::string(exe) + ' ' + args + " >" + out.string() + " 2>" + err.string();
    const int raw = std::system(cmd.c_str());
    return {WEXITSTATUS(raw), slurp(out), slurp(err)};
}

RunConfig small_config(const fs::path& dir) {
    RunConfig c;
    c.out = dir.string();
    c.workers = 1;
    return c;
}

} // namespace

TEST_CASE("config text") {
    RunConfig c;
    apply_config_text(c, "# run\nbase = a.voxg\ngen = b.voxg\ngen = c.voxg\nd = 64\niso-fraction = 0.5\n"
                         "pair_fraction = 1\nseed = 18446744073709551615\ndims = 10x5x12\nstructures = 2\n");
    CHECK(c.base == "a.voxg");
    CHECK(c.gen == std::vector<std::string>{"b.voxg", "c.voxg"});
    CHECK(c.d == 64);
    CHECK(c.iso_fraction == 0.5);
    CHECK(c.pair_fraction == 1.0);
    CHECK(c.seed == 18446744073709551615ULL);
    CHECK(c.dims == world::Dims{10, 5, 12});
    CHECK(c.toy.structure_count == 2);
    CHECK(c.n == 32);
    CHECK(c.top_k == 5);
    CHECK(c.match_radius == 0.0);

    try {
        apply_config_text(c, "d = 3\n\nwhat = 1\n");
        FAIL("no error");
    } catch (const FormatError& e) {
        CHECK(e.offset() == 3);
    }
    CHECK_THROWS_AS(apply_config_text(c, "d = x\n"), FormatError);
    CHECK_THROWS_AS(apply_config_text(c, "just words\n"), FormatError);

    RunConfig bad;
    bad.iso_fraction = 0.0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad = RunConfig{};
    bad.d = 0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad = RunConfig{};
    bad.column_agg = "max";
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("worker count resolution") {
    CHECK(resolve_workers(3) == 3);
    setenv("VOXSHIFT_WORKERS", "2", 1);
    CHECK(resolve_workers(0) == 2);
    unsetenv("VOXSHIFT_WORKERS");
    CHECK(resolve_workers(0) >= 1);
}

TEST_CASE("isovist metrics CSVs for a flat world") {
    const auto dir = scratch("isovists");
    world::write_world_file(dir / "flat.voxg", world::generate_flat_world({8, 4, 8}, 1, "stone", 0));
    auto c = small_config(dir / "full");
    c.base = (dir / "flat.voxg").string();
    c.iso_fraction = 1.0;
    std::ostringstream log;
    run_isovists(c, log);
    CHECK(data_rows(dir / "full/base.metrics.csv") == 64);
    CHECK(log.str().find("64 headspaces, 64 sampled") != std::string::npos);
    const auto sets = slurp(dir / "full/base.sets.tsv");
    CHECK(sets.rfind("x\ty\tz\tvisible\tsupport\tperimeter\treal_perimeter\treachable\tsky\n", 0) == 0);

    c.out = (dir / "tenth").string();
    c.iso_fraction = 0.1;
    run_isovists(c, log);
    CHECK(data_rows(dir / "tenth/base.metrics.csv") == 7);
    const auto first = slurp(dir / "tenth/base.metrics.csv");
    run_isovists(c, log);
    CHECK(slurp(dir / "tenth/base.metrics.csv") == first);
}

TEST_CASE("analysis does not depend on worker count") {
    const auto w = oracle::build_world({12, 8, 12}, 2, {{{4, 2, 4}, "stone"}, {{4, 3, 4}, "glass"}, {{7, 2, 3}, "planks"}});
    const auto cls = world::default_classification();
    const auto a = analyze_world(w, cls, {32, 8}, 0.5, 4, 1);
    const auto b = analyze_world(w, cls, {32, 8}, 0.5, 4, 3);
    CHECK(metrics::format_metrics_csv(a.records) == metrics::format_metrics_csv(b.records));
    CHECK(common_ground_level(w, cls) == 3);
}

TEST_CASE("gen-toy writes identical worlds without structures") {
    const auto dir = scratch("gentoy0");
    auto c = small_config(dir);
    c.dims = {24, 10, 24};
    c.toy.structure_count = 0;
    std::ostringstream log;
    run_gen_toy(c, log);
    CHECK(slurp(dir / "base.voxg") == slurp(dir / "gen.voxg"));
}

TEST_CASE("gen-toy structures appear as connected components") {
    const auto dir = scratch("gentoy4");
    auto c = small_config(dir);
    c.dims = {48, 12, 48};
    c.toy.structure_count = 4;
    c.seed = 5;
    std::ostringstream log;
    run_gen_toy(c, log);
    const auto base = world::read_world_file(dir / "base.voxg");
    const auto gen = world::read_world_file(dir / "gen.voxg");
    std::set<std::pair<int, int>> changed;
    for (std::size_t i = 0; i < base.volume(); ++i) {
        const auto p = base.coord_of(i);
        if (*base.block_at(p) != *gen.block_at(p)) changed.insert({p.x, p.z});
    }
    // Count 8-connected groups of changed columns.
    std::set<std::pair<int, int>> seen;
    int components = 0;
    for (const auto& start : changed) {
        if (seen.count(start)) continue;
        ++components;
        std::queue<std::pair<int, int>> q;
        q.push(start);
        seen.insert(start);
        while (!q.empty()) {
            const auto [x, z] = q.front();
            q.pop();
            for (int dx = -1; dx <= 1; ++dx)
                for (int dz = -1; dz <= 1; ++dz) {
                    const std::pair<int, int> n{x + dx, z + dz};
                    if (changed.count(n) && seen.insert(n).second) q.push(n);
                }
        }
    }
    CHECK(components == 4);
    CHECK(data_rows(dir / "footprints.csv") == 4);

    const auto again = scratch("gentoy4b");
    c.out = again.string();
    run_gen_toy(c, log);
    CHECK(slurp(dir / "gen.voxg") == slurp(again / "gen.voxg"));
    CHECK(slurp(dir / "footprints.csv") == slurp(again / "footprints.csv"));
}

TEST_CASE("shift of a world against itself") {
    const auto dir = scratch("selfshift");
    world::write_world_file(dir / "w.voxg",
                            oracle::build_world({16, 8, 16}, 2, {{{5, 2, 5}, "stone"}, {{9, 2, 9}, "planks"}}));
    auto c = small_config(dir / "out");
    c.base = (dir / "w.voxg").string();
    c.gen = {c.base};
    c.iso_fraction = 1.0;
    c.pair_fraction = 1.0;
    std::ostringstream log;
    run_shift(c, log);
    const auto summary = slurp(dir / "out/summary_gen1.txt");
    CHECK(summary.find("dropped: 0\n") != std::string::npos);
    CHECK(summary.find("max_magnitude: 0\n") != std::string::npos);
    CHECK(log.str().find("rank") != std::string::npos);
    for (const char* f : {"model.txt", "base.metrics.csv", "gen1.metrics.csv", "era_base.svg", "era_gen1.svg",
                          "overlay_base.ppm", "overlay_gen1.ppm", "shift_gen1.csv", "flow_gen1.svg"})
        CHECK(fs::exists(dir / "out" / f));
}

TEST_CASE("overlay shows the structure") {
    const auto dir = scratch("overlay");
    const auto base = world::generate_flat_world({32, 10, 32}, 2, "grass", 0);
    world::ToyGeneratorParams p;
    p.structure_count = 1;
    p.footprint = {7, 7};
    p.wall_height = {4, 4};
    p.seed = 2;
    const auto toy = world::apply_toy_generator(base, p);
    world::write_world_file(dir / "base.voxg", base);
    world::write_world_file(dir / "gen.voxg", toy.world);
    auto c = small_config(dir / "out");
    c.base = (dir / "base.voxg").string();
    c.gen = {(dir / "gen.voxg").string()};
    c.iso_fraction = 1.0;
    std::ostringstream log;
    run_overlay(c, log);
    const auto img = viz::parse_ppm(slurp(dir / "out/overlay_gen1.ppm"));
    CHECK(img.width == 32);
    CHECK(img.height == 32);
    const auto& f = toy.footprints.at(0);
    std::vector<double> inside, outside;
    for (int z = 0; z < 32; ++z)
        for (int x = 0; x < 32; ++x) {
            const auto px = img.pixel(x, z);
            if (f.on_ring(x, z)) continue;  // wall tops
            const double pos = viz::ramp_position(viz::viridis(), px);
            if (f.covers(x, z)) inside.push_back(pos);
            else if (oracle::footprint_distance(f, x, z) >= 8) outside.push_back(pos);
        }
    REQUIRE_FALSE(inside.empty());
    REQUIRE_FALSE(outside.empty());
    CHECK(std::abs(oracle::median(inside) - oracle::median(outside)) > 20.0);
}

TEST_CASE("command line behaviour") {
    const auto dir = scratch("cli");
    auto r = cli("gen-toy --dims 20x8x20 --ground-height 2 --structures 2 --seed 9 --out " + (dir / "a").string(), dir);
    CHECK(r.status == 0);
    CHECK(fs::exists(dir / "a/gen.voxg"));

    // Flags override the config file.
    std::ofstream(dir / "run.conf") << "seed = 1\nstructures = 2\ndims = 20x8x20\nground_height = 2\nout = "
                                    << (dir / "b").string() << "\n";
    r = cli("gen-toy --config " + (dir / "run.conf").string() + " --seed 9", dir);
    CHECK(r.status == 0);
    CHECK(slurp(dir / "a/footprints.csv") == slurp(dir / "b/footprints.csv"));

    r = cli("isovists --base " + (dir / "a/base.voxg").string() + " --iso-fraction 1 --workers 2 --out " +
                (dir / "c").string(),
            dir);
    CHECK(r.status == 0);
    CHECK(data_rows(dir / "c/base.metrics.csv") == 400);

    r = cli("isovists --out " + (dir / "d").string(), dir);
    CHECK(r.status == 1);
    CHECK(r.err.rfind("voxshift: error[invalid-argument]: ", 0) == 0);

    r = cli("isovists --base " + (dir / "missing.voxg").string(), dir);
    CHECK(r.status == 1);
    CHECK(r.err.rfind("voxshift: error[io]: ", 0) == 0);

    r = cli("shift --bogus", dir);
    CHECK(r.status == 2);
    CHECK(r.err.rfind("voxshift: error[usage]: ", 0) == 0);

    r = cli("isovists --base " + (dir / "a/base.voxg").string() + " --iso-fraction 1.5", dir);
    CHECK(r.status == 1);

    // Nothing in the generated world shares a column with the base.
    world::write_world_file(dir / "low.voxg", oracle::build_world({4, 6, 4}, 1, {}));
    world::write_world_file(dir / "shaft.voxg",
                            oracle::build_world({4, 6, 4}, 6, {{{7, 1, 7}, "air"}, {{7, 2, 7}, "air"}}, {6, 0, 6}));
    r = cli("shift --base " + (dir / "low.voxg").string() + " --gen " + (dir / "shaft.voxg").string() +
                " --iso-fraction 1 --out " + (dir / "e").string(),
            dir);
    CHECK(r.status == 1);
    CHECK(r.err.rfind("voxshift: error[pairing]: ", 0) == 0);
}
