#include "voxshift/errors.hpp"
#include "voxshift/pipeline/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace voxshift::pipeline {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view v, std::size_t line_no, std::string_view key) {
    T out{};
    if constexpr (std::is_floating_point_v<T>) {
        std::string s(v);
        char* end = nullptr;
        out = static_cast<T>(std::strtod(s.c_str(), &end));
        if (s.empty() || end != s.c_str() + s.size()) {
            throw FormatError("bad number '" + s + "' for " + std::string(key), line_no);
        }
    } else {
        const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc{} || ptr != v.data() + v.size()) {
            throw FormatError("bad integer '" + std::string(v) + "' for " + std::string(key), line_no);
        }
    }
    return out;
}

world::Dims parse_dims(std::string_view v, std::size_t line_no) {
    std::string s(v);
    std::replace(s.begin(), s.end(), 'x', ' ');
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    world::Dims d;
    std::string rest;
    if (!(in >> d.sx >> d.sy >> d.sz) || (in >> rest)) throw FormatError("dims must be SXxSYxSZ", line_no);
    return d;
}

} // namespace

void RunConfig::validate() const {
    const auto fraction_ok = [](double f) { return f > 0.0 && f <= 1.0; };
    if (!fraction_ok(iso_fraction)) throw InvalidArgument("iso-fraction must lie in (0, 1]");
    if (!fraction_ok(pair_fraction)) throw InvalidArgument("pair-fraction must lie in (0, 1]");
    if (d < 1) throw InvalidArgument("d must be >= 1");
    if (n < 0) throw InvalidArgument("n must be >= 0");
    if (top_k < 1) throw InvalidArgument("top-k must be >= 1");
    if (!(match_radius >= 0.0)) throw InvalidArgument("match-radius must be >= 0");
    if (column_agg != "mean" && column_agg != "highest") {
        throw InvalidArgument("column-agg must be 'mean' or 'highest'");
    }
}

void apply_config_text(RunConfig& c, std::string_view text) {
    std::size_t line_no = 0;
    bool gen_from_file = false;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        auto line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw FormatError("expected 'key = value'", line_no);
        std::string key(trim(line.substr(0, eq)));
        std::replace(key.begin(), key.end(), '-', '_');
        const auto value = trim(line.substr(eq + 1));

        if (key == "base") c.base = value;
        else if (key == "gen") {
            if (!gen_from_file) c.gen.clear();
            gen_from_file = true;
            c.gen.emplace_back(value);
        }
        else if (key == "classify") c.classify = value;
        else if (key == "model") c.model = value;
        else if (key == "d") c.d = parse_number<int>(value, line_no, key);
        else if (key == "n") c.n = parse_number<int>(value, line_no, key);
        else if (key == "iso_fraction") c.iso_fraction = parse_number<double>(value, line_no, key);
        else if (key == "pair_fraction") c.pair_fraction = parse_number<double>(value, line_no, key);
        else if (key == "match_radius") c.match_radius = parse_number<double>(value, line_no, key);
        else if (key == "seed") c.seed = parse_number<std::uint64_t>(value, line_no, key);
        else if (key == "top_k") c.top_k = parse_number<std::size_t>(value, line_no, key);
        else if (key == "workers") c.workers = parse_number<unsigned>(value, line_no, key);
        else if (key == "out") c.out = value;
        else if (key == "column_agg") c.column_agg = value;
        else if (key == "ground_y") c.ground_y = parse_number<int>(value, line_no, key);
        else if (key == "dims") c.dims = parse_dims(value, line_no);
        else if (key == "ground_height") c.ground_height = parse_number<int>(value, line_no, key);
        else if (key == "ground_material") c.ground_material = value;
        else if (key == "structures") c.toy.structure_count = parse_number<int>(value, line_no, key);
        else if (key == "footprint_min") c.toy.footprint.min = parse_number<int>(value, line_no, key);
        else if (key == "footprint_max") c.toy.footprint.max = parse_number<int>(value, line_no, key);
        else if (key == "height_min") c.toy.wall_height.min = parse_number<int>(value, line_no, key);
        else if (key == "height_max") c.toy.wall_height.max = parse_number<int>(value, line_no, key);
        else if (key == "material") c.toy.material = value;
        else throw FormatError("unknown config key '" + key + "'", line_no);
    }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    apply_config_text(config, buf.str());
}

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("VOXSHIFT_WORKERS")) {
        unsigned v = 0;
        const std::string_view s(env);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc{} && ptr == s.data() + s.size() && v > 0) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace voxshift::pipeline
