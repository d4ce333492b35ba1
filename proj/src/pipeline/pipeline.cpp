#include "voxshift/pipeline/pipeline.hpp"

#include "voxshift/errors.hpp"
#include "voxshift/isovist/headspace.hpp"
#include "voxshift/sampling.hpp"
#include "voxshift/shift/shift.hpp"
#include "voxshift/worker_pool.hpp"
#include "voxshift/world/voxgrid.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

namespace voxshift::pipeline {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kComponents = 2;

struct LoadedWorld {
    std::string label;
    std::unique_ptr<world::VoxelWorld> world;
    WorldAnalysis analysis;
};

struct Inputs {
    world::BlockClassification classification;
    std::vector<LoadedWorld> worlds;  // base first
};

void write_text(const fs::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("failed writing " + path.string());
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path prepare_out(const RunConfig& config) {
    const fs::path out(config.out);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw IoError("cannot create output directory " + out.string() + ": " + ec.message());
    return out;
}

world::BlockClassification load_classification_for(const RunConfig& config) {
    return config.classify.empty() ? world::default_classification() : world::load_classification(config.classify);
}

Inputs load_and_analyze(const RunConfig& config, bool need_gen, std::ostream& log) {
    config.validate();
    if (config.base.empty()) throw InvalidArgument("--base is required");
    if (need_gen && config.gen.empty()) throw InvalidArgument("at least one --gen world is required");

    Inputs in;
    in.classification = load_classification_for(config);
    const isovist::IsovistConfig iso{config.d, config.n};
    const unsigned workers = resolve_workers(config.workers);

    std::vector<std::pair<std::string, std::string>> sources{{"base", config.base}};
    for (std::size_t i = 0; i < config.gen.size(); ++i) sources.emplace_back("gen" + std::to_string(i + 1), config.gen[i]);

    for (const auto& [label, path] : sources) {
        LoadedWorld lw;
        lw.label = label;
        lw.world = std::make_unique<world::VoxelWorld>(world::read_world_file(path));
        lw.analysis = analyze_world(*lw.world, in.classification, iso, config.iso_fraction, config.seed, workers, label);
        log << label << ": " << path << ": " << lw.analysis.headspace_count << " headspaces, "
            << lw.analysis.records.size() << " sampled\n";
        in.worlds.push_back(std::move(lw));
    }
    return in;
}

pca::PcaModel fit_or_load(const RunConfig& config, const Inputs& in, std::ostream& log) {
    if (!config.model.empty()) {
        log << "model: loaded " << config.model << '\n';
        return pca::parse_model(read_text(config.model));
    }
    std::vector<metrics::MetricRow> rows;
    for (const auto& w : in.worlds) {
        for (const auto& r : w.analysis.records) rows.push_back(r.metrics.as_row());
    }
    auto model = pca::fit_pca(rows, kComponents);
    char buf[96];
    std::snprintf(buf, sizeof buf, "model: fit on %zu rows, explained variance PC-1 %.4f, PC-2 %.4f\n", rows.size(),
                  model.explained_variance_ratio[0], model.explained_variance_ratio[1]);
    log << buf;
    return model;
}

std::vector<Point2> project_all(const pca::PcaModel& model, const WorldAnalysis& a) {
    std::vector<Point2> out;
    out.reserve(a.records.size());
    for (const auto& r : a.records) {
        const auto p = pca::project(model, r.metrics.as_row());
        out.push_back({p[0], p.size() > 1 ? p[1] : 0.0});
    }
    return out;
}

// Shared axes so ERA plots of different worlds are comparable.
viz::PlotSpec shared_spec(const std::vector<std::vector<Point2>>& all, std::string title) {
    std::vector<Point2> flat;
    for (const auto& v : all) flat.insert(flat.end(), v.begin(), v.end());
    viz::PlotSpec spec;
    spec.title = std::move(title);
    if (!flat.empty()) {
        const auto t = viz::make_transform(flat, spec);
        spec.x_range = t.x;
        spec.y_range = t.y;
    }
    return spec;
}

void write_eras(const fs::path& out, const Inputs& in, const std::vector<std::vector<Point2>>& projected) {
    auto spec = shared_spec(projected, "");
    for (std::size_t i = 0; i < in.worlds.size(); ++i) {
        if (projected[i].empty()) continue;
        spec.title = "ERA " + in.worlds[i].label;
        write_text(out / ("era_" + in.worlds[i].label + ".svg"), viz::render_era_scatter(projected[i], spec));
    }
}

void write_overlays(const RunConfig& config, const fs::path& out, const Inputs& in,
                    const std::vector<std::vector<Point2>>& projected, std::ostream& log) {
    auto threshold = config.ground_y;
    if (!threshold) threshold = common_ground_level(*in.worlds.front().world, in.classification);
    if (!threshold) {
        log << "overlay: base world has no headspaces, skipped\n";
        return;
    }
    const auto agg = config.column_agg == "highest" ? viz::ColumnAgg::Highest : viz::ColumnAgg::Mean;
    for (std::size_t i = 0; i < in.worlds.size(); ++i) {
        std::vector<viz::ProjectedHeadspace> items;
        const auto& recs = in.worlds[i].analysis.records;
        for (std::size_t j = 0; j < recs.size(); ++j) items.push_back({recs[j].location, projected[i][j]});
        const auto overlay = viz::render_overlay(*in.worlds[i].world, items, *threshold, viz::PlotSpec{}, agg);
        write_text(out / ("overlay_" + in.worlds[i].label + ".ppm"), overlay.image.to_ppm());
    }
    log << "overlay: ground threshold y = " << *threshold << '\n';
}

void print_top_k(std::ostream& log, const std::vector<shift::ShiftRecord>& top) {
    log << "rank  base(x,y,z)          gen(x,y,z)           magnitude\n";
    char buf[160];
    for (std::size_t i = 0; i < top.size(); ++i) {
        const auto& b = top[i].pair.base_head;
        const auto& g = top[i].pair.gen_head;
        std::snprintf(buf, sizeof buf, "%-5zu (%d,%d,%d)%*s(%d,%d,%d)%*s%.6f\n", i + 1, b.x, b.y, b.z, 4, "", g.x, g.y,
                      g.z, 4, "", top[i].magnitude);
        log << buf;
    }
}

} // namespace

WorldAnalysis analyze_world(const world::VoxelWorld& world, const world::BlockClassification& classification,
                            const isovist::IsovistConfig& config, double iso_fraction, std::uint64_t seed,
                            unsigned workers, std::string label) {
    config.validate();
    const isovist::IsovistContext context(world, classification);
    const auto sampled = isovist::subsample_headspaces(context.headspaces(), iso_fraction, seed);

    WorldAnalysis out;
    out.label = std::move(label);
    out.headspace_count = context.headspaces().size();
    out.records.resize(sampled.size());
    out.set_counts.resize(sampled.size());
    parallel_for(sampled.size(), workers, [&](std::size_t i) {
        const auto sets = isovist::compute_isovist(context, sampled[i], config);
        out.records[i] = {sampled[i], metrics::compute_metrics(sets)};
        out.set_counts[i] = {sets.visible_headspaces.size(), sets.support_blocks.size(), sets.perimeter.size(),
                             sets.real_perimeter.size(),       sets.reachable.size(),      sets.sky_count()};
    });
    return out;
}

std::string format_set_counts(const WorldAnalysis& analysis) {
    std::string out = "x\ty\tz\tvisible\tsupport\tperimeter\treal_perimeter\treachable\tsky\n";
    for (std::size_t i = 0; i < analysis.records.size(); ++i) {
        const auto& h = analysis.records[i].location.head;
        const auto& c = analysis.set_counts[i];
        for (const long v : {long(h.x), long(h.y), long(h.z)}) out += std::to_string(v) + '\t';
        for (const auto v : {c.visible, c.support, c.perimeter, c.real_perimeter, c.reachable}) {
            out += std::to_string(v) + '\t';
        }
        out += std::to_string(c.sky) + '\n';
    }
    return out;
}

std::optional<int> common_ground_level(const world::VoxelWorld& world,
                                       const world::BlockClassification& classification) {
    std::map<int, std::size_t> counts;
    for (const auto& h : isovist::enumerate_headspaces(world, classification)) ++counts[h.head.y];
    std::optional<int> best;
    std::size_t best_count = 0;
    for (const auto& [y, count] : counts) {
        if (count > best_count) {
            best = y;
            best_count = count;
        }
    }
    return best;
}

void run_isovists(const RunConfig& config, std::ostream& log) {
    const auto in = load_and_analyze(config, false, log);
    const auto out = prepare_out(config);
    for (const auto& w : in.worlds) {
        const auto path = out / (w.label + ".metrics.csv");
        write_text(path, metrics::format_metrics_csv(w.analysis.records));
        write_text(out / (w.label + ".sets.tsv"), format_set_counts(w.analysis));
        log << "wrote " << path.string() << '\n';
    }
}

void run_pca_fit(const RunConfig& config, std::ostream& log) {
    const auto in = load_and_analyze(config, false, log);
    const auto out = prepare_out(config);
    RunConfig fit_config = config;
    fit_config.model.clear();
    const auto model = fit_or_load(fit_config, in, log);
    write_text(out / "model.txt", pca::format_model(model));
    char buf[96];
    log << "metric                 PC-1      PC-2\n";
    for (std::size_t c = 0; c < metrics::kMetricCount; ++c) {
        std::snprintf(buf, sizeof buf, "%-20s %8.4f  %8.4f\n", metrics::kMetricNames[c], model.loadings[0][c],
                      model.loadings[1][c]);
        log << buf;
    }
    log << "wrote " << (out / "model.txt").string() << '\n';
}

void run_era(const RunConfig& config, std::ostream& log) {
    const auto in = load_and_analyze(config, false, log);
    const auto out = prepare_out(config);
    const auto model = fit_or_load(config, in, log);
    std::vector<std::vector<Point2>> projected;
    for (const auto& w : in.worlds) projected.push_back(project_all(model, w.analysis));
    write_eras(out, in, projected);
    log << "wrote ERA scatters to " << out.string() << '\n';
}

void run_overlay(const RunConfig& config, std::ostream& log) {
    const auto in = load_and_analyze(config, false, log);
    const auto out = prepare_out(config);
    const auto model = fit_or_load(config, in, log);
    std::vector<std::vector<Point2>> projected;
    for (const auto& w : in.worlds) projected.push_back(project_all(model, w.analysis));
    write_overlays(config, out, in, projected, log);
}

void run_shift(const RunConfig& config, std::ostream& log) {
    const auto in = load_and_analyze(config, true, log);
    const auto out = prepare_out(config);
    for (const auto& w : in.worlds) {
        write_text(out / (w.label + ".metrics.csv"), metrics::format_metrics_csv(w.analysis.records));
    }
    const auto model = fit_or_load(config, in, log);
    write_text(out / "model.txt", pca::format_model(model));

    std::vector<std::vector<Point2>> projected;
    for (const auto& w : in.worlds) projected.push_back(project_all(model, w.analysis));
    write_eras(out, in, projected);
    write_overlays(config, out, in, projected, log);

    const auto& base = in.worlds.front().analysis.records;
    if (base.empty()) throw PairingError("base world has no sampled headspaces to pair");
    for (std::size_t i = 1; i < in.worlds.size(); ++i) {
        const auto& gw = in.worlds[i];
        if (gw.analysis.records.empty()) throw PairingError(gw.label + " has no sampled headspaces to pair");
        const auto pairing = shift::pair_locations(base, gw.analysis.records, config.pair_fraction,
                                                   config.match_radius, derive_seed(config.seed, i));
        if (pairing.pairs.empty()) {
            throw PairingError("no location of " + std::to_string(pairing.sampled) + " sampled could be paired with " +
                               gw.label);
        }
        const auto records = shift::compute_shift(pairing.pairs, model);
        const auto summary = shift::shift_summary(records, pairing.dropped);
        const auto top = shift::top_k_shifts(records, config.top_k);

        write_text(out / ("shift_" + gw.label + ".csv"), shift::format_shift_csv(records));
        write_text(out / ("summary_" + gw.label + ".txt"), shift::format_summary(summary));
        viz::PlotSpec spec;
        spec.highlight_count = config.top_k;
        spec.title = "Generative shift " + gw.label;
        write_text(out / ("flow_" + gw.label + ".svg"), viz::render_flow_plot(records, spec));

        log << "== " << gw.label << " (" << pairing.sampled << " sampled)\n" << shift::format_summary(summary);
        print_top_k(log, top);
    }
}

void run_gen_toy(const RunConfig& config, std::ostream& log) {
    auto toy = config.toy;
    toy.seed = config.seed;
    const auto base = world::generate_flat_world(config.dims, config.ground_height, config.ground_material, config.seed);
    const auto result = world::apply_toy_generator(base, toy);
    const auto out = prepare_out(config);
    world::write_world_file(out / "base.voxg", base);
    world::write_world_file(out / "gen.voxg", result.world);
    std::string fp = "x0,z0,width,depth,height\n";
    for (const auto& f : result.footprints) {
        fp += std::to_string(f.x0) + ',' + std::to_string(f.z0) + ',' + std::to_string(f.width) + ',' +
              std::to_string(f.depth) + ',' + std::to_string(f.height) + '\n';
    }
    write_text(out / "footprints.csv", fp);
    log << "wrote " << (out / "base.voxg").string() << " and " << (out / "gen.voxg").string() << " with "
        << result.footprints.size() << " structures\n";
}

} // namespace voxshift::pipeline
