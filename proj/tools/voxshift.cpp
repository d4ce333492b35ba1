// voxshift: isovist metrics, PCA compression and generative-shift analysis
// for voxel worlds.

#include "voxshift/errors.hpp"
#include "voxshift/pipeline/pipeline.hpp"

#include <CLI11.hpp>

#include <cstring>
#include <iostream>
#include <string_view>

namespace {

using voxshift::pipeline::RunConfig;

void add_analysis_flags(CLI::App& cmd, RunConfig& c) {
    cmd.add_option("--base", c.base, "Base world (.voxg)");
    cmd.add_option("--gen", c.gen, "Generated world (.voxg); repeatable");
    cmd.add_option("--classify", c.classify, "Block classification file");
    cmd.add_option("--d", c.d, "View distance in blocks");
    cmd.add_option("--n", c.n, "Reachability step budget");
    cmd.add_option("--iso-fraction", c.iso_fraction, "Isovists computed per Y level, as a fraction");
    cmd.add_option("--seed", c.seed, "Run seed");
    cmd.add_option("--workers", c.workers, "Worker threads (default: $VOXSHIFT_WORKERS or CPU count)");
    cmd.add_option("--out", c.out, "Output directory");
    cmd.add_option("--model", c.model, "Use a model written by pca-fit instead of fitting");
}

void add_plot_flags(CLI::App& cmd, RunConfig& c) {
    cmd.add_option("--column-agg", c.column_agg, "Overlay column aggregation")->check(CLI::IsMember({"mean", "highest"}));
    cmd.add_option("--ground-y", c.ground_y, "Overlay ground threshold (default: most common head y of base)");
}

// Flags override the config file, so it is applied before CLI11 binds.
RunConfig config_from_argv(int argc, char** argv) {
    RunConfig config;
    for (int i = 1; i < argc; ++i) {
        const std::string_view arg = argv[i];
        if (arg == "--config" && i + 1 < argc) {
            voxshift::pipeline::apply_config_file(config, argv[i + 1]);
        } else if (arg.starts_with("--config=")) {
            voxshift::pipeline::apply_config_file(config, std::string(arg.substr(9)));
        }
    }
    return config;
}

} // namespace

int main(int argc, char** argv) {
    try {
        RunConfig config = config_from_argv(argc, argv);
        std::string config_path;

        CLI::App app{"voxshift - isovist metrics and generative shift for voxel worlds"};
        app.require_subcommand(1);
        app.fallthrough();  // --config is accepted after the subcommand too
        app.add_option("--config", config_path, "key = value config file; flags win")->check(CLI::ExistingFile);

        auto* isovists = app.add_subcommand("isovists", "Compute per-headspace isovist metrics CSVs");
        add_analysis_flags(*isovists, config);

        auto* pca_fit = app.add_subcommand("pca-fit", "Fit the 2-component PCA model on the given worlds");
        add_analysis_flags(*pca_fit, config);

        auto* era = app.add_subcommand("era", "Write PC-1/PC-2 scatterplots per world");
        add_analysis_flags(*era, config);

        auto* overlay = app.add_subcommand("overlay", "Write overhead PC-1 overlays per world");
        add_analysis_flags(*overlay, config);
        add_plot_flags(*overlay, config);

        auto* shift = app.add_subcommand("shift", "Full generative-shift analysis");
        add_analysis_flags(*shift, config);
        add_plot_flags(*shift, config);
        shift->add_option("--pair-fraction", config.pair_fraction, "Fraction of base locations to pair");
        shift->add_option("--match-radius", config.match_radius, "Fallback match radius in blocks (0: same column only)");
        shift->add_option("--top-k", config.top_k, "Number of top shifts to report and highlight");

        auto* gen_toy = app.add_subcommand("gen-toy", "Write a flat base world and a toy-generated counterpart");
        std::string dims_text;
        gen_toy->add_option("--dims", dims_text, "World size SXxSYxSZ (default 64x32x64)");
        gen_toy->add_option("--ground-height", config.ground_height, "Ground layers");
        gen_toy->add_option("--ground-material", config.ground_material, "Ground block");
        gen_toy->add_option("--structures", config.toy.structure_count, "Structure count");
        gen_toy->add_option("--footprint-min", config.toy.footprint.min, "Smallest footprint side");
        gen_toy->add_option("--footprint-max", config.toy.footprint.max, "Largest footprint side");
        gen_toy->add_option("--height-min", config.toy.wall_height.min, "Lowest wall");
        gen_toy->add_option("--height-max", config.toy.wall_height.max, "Highest wall");
        gen_toy->add_option("--material", config.toy.material, "Wall block");
        gen_toy->add_option("--seed", config.seed, "Placement seed");
        gen_toy->add_option("--out", config.out, "Output directory");

        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e);
        } catch (const CLI::CallForAllHelp& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            std::cerr << "voxshift: error[usage]: " << e.what() << '\n';
            return 2;
        }
        if (!dims_text.empty()) {
            voxshift::pipeline::apply_config_text(config, "dims = " + dims_text);
        }

        if (*isovists) voxshift::pipeline::run_isovists(config, std::cout);
        else if (*pca_fit) voxshift::pipeline::run_pca_fit(config, std::cout);
        else if (*era) voxshift::pipeline::run_era(config, std::cout);
        else if (*overlay) voxshift::pipeline::run_overlay(config, std::cout);
        else if (*shift) voxshift::pipeline::run_shift(config, std::cout);
        else if (*gen_toy) voxshift::pipeline::run_gen_toy(config, std::cout);
        return 0;
    } catch (const voxshift::Error& e) {
        std::cerr << "voxshift: error[" << e.error_class() << "]: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "voxshift: error[internal]: " << e.what() << '\n';
        return 3;
    }
}
