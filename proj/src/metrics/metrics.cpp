#include "voxshift/metrics/metrics.hpp"

#include "voxshift/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>

namespace voxshift::metrics {

namespace {

// |a ∩ b| for two lists sorted by (y, z, x).
template <class A, class B, class KeyA, class KeyB>
std::size_t intersection_size(const A& a, const B& b, KeyA key_a, KeyB key_b) {
    std::size_t n = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        const Coord ca = key_a(*ia);
        const Coord cb = key_b(*ib);
        if (yzx_less(ca, cb)) {
            ++ia;
        } else if (yzx_less(cb, ca)) {
            ++ib;
        } else {
            ++n;
            ++ia;
            ++ib;
        }
    }
    return n;
}

double ratio(std::size_t num, std::size_t den, bool& degenerate) {
    if (den == 0) {
        degenerate = true;
        return 0.0;
    }
    return static_cast<double>(num) / static_cast<double>(den);
}

void append_number(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    out += buf;
}

} // namespace

MetricRow IsovistMetrics::as_row() const {
    return {static_cast<double>(area),
            static_cast<double>(perimeter),
            static_cast<double>(diversity),
            var_radials,
            mean_radials,
            roundness,
            openness,
            clutter,
            static_cast<double>(reachability),
            occlusivity,
            drift_length,
            vista_length,
            static_cast<double>(real_perimeter_size)};
}

IsovistMetrics compute_metrics(const isovist::IsovistSets& sets) {
    IsovistMetrics m;
    m.area = sets.visible_headspaces.size();
    m.perimeter = sets.perimeter.size();
    m.real_perimeter_size = sets.real_perimeter.size();
    m.reachability = sets.reachable.size();

    std::set<world::PaletteIndex> types;
    for (const auto& p : sets.perimeter) types.insert(p.block);
    m.diversity = types.size();

    const auto self = [](const Coord& c) { return c; };
    const auto coord_of = [](const isovist::PerimeterBlock& p) { return p.coord; };
    m.roundness = ratio(m.area, m.perimeter, m.degenerate);
    m.openness = ratio(m.area, m.real_perimeter_size, m.degenerate);
    m.occlusivity = ratio(intersection_size(sets.reachable, sets.support_blocks, self, self), m.reachability,
                          m.degenerate);
    m.clutter = ratio(intersection_size(sets.support_blocks, sets.perimeter, self, coord_of), m.area, m.degenerate);

    const std::size_t count = sets.radials.size() + sets.sky_count();
    if (count == 0) {
        m.degenerate = true;
        return m;
    }
    const double sky = sets.sky_length();
    double sum = 0.0;
    double vista = 0.0;
    for (double l : sets.radials) {
        sum += l;
        vista = std::max(vista, l);
    }
    sum += sky * static_cast<double>(sets.sky_count());
    if (sets.sky_count() > 0) vista = std::max(vista, sky);
    const double mean = sum / static_cast<double>(count);

    double sq = 0.0;
    for (double l : sets.radials) sq += (l - mean) * (l - mean);
    sq += static_cast<double>(sets.sky_count()) * (sky - mean) * (sky - mean);

    Vec3d centre;
    const auto accumulate = [&centre](const Vec3d& p) {
        centre.x += p.x;
        centre.y += p.y;
        centre.z += p.z;
    };
    for (const auto& p : sets.radial_endpoints) accumulate(p);
    for (const auto& p : sets.sky_endpoints) accumulate(p);
    const auto n = static_cast<double>(count);
    const auto& h = sets.centroid.head;
    const double ex = centre.x / n - h.x;
    const double ey = centre.y / n - h.y;
    const double ez = centre.z / n - h.z;

    m.mean_radials = mean;
    m.var_radials = sq / n;
    m.vista_length = vista;
    m.drift_length = std::sqrt(ex * ex + ey * ey + ez * ez);
    return m;
}

MetricsMatrix metrics_matrix(std::span<const LocatedMetrics> records) {
    if (records.empty()) throw InvalidArgument("metrics matrix needs at least one record");
    std::vector<const LocatedMetrics*> order;
    order.reserve(records.size());
    for (const auto& r : records) order.push_back(&r);
    std::stable_sort(order.begin(), order.end(), [](const LocatedMetrics* a, const LocatedMetrics* b) {
        return yzx_less(a->location.head, b->location.head);
    });
    MetricsMatrix out;
    for (const auto* r : order) {
        out.rows.push_back(r->metrics.as_row());
        out.heads.push_back(r->location.head);
    }
    return out;
}

std::string metrics_csv_header() {
    std::string h = "x,y,z";
    for (const auto* name : kMetricNames) {
        h += ',';
        h += name;
    }
    h += ",degenerate";
    return h;
}

std::string format_metrics_csv(std::span<const LocatedMetrics> records) {
    std::string out = metrics_csv_header();
    out += '\n';
    for (const auto& r : records) {
        const auto& c = r.location.head;
        out += std::to_string(c.x) + ',' + std::to_string(c.y) + ',' + std::to_string(c.z);
        const auto& m = r.metrics;
        const double values[] = {m.var_radials, m.mean_radials, m.roundness, m.openness, m.clutter};
        out += ',' + std::to_string(m.area) + ',' + std::to_string(m.perimeter) + ',' + std::to_string(m.diversity);
        for (double v : values) {
            out += ',';
            append_number(out, v);
        }
        out += ',' + std::to_string(m.reachability) + ',';
        append_number(out, m.occlusivity);
        out += ',';
        append_number(out, m.drift_length);
        out += ',';
        append_number(out, m.vista_length);
        out += ',' + std::to_string(m.real_perimeter_size);
        out += m.degenerate ? ",1\n" : ",0\n";
    }
    return out;
}

std::vector<LocatedMetrics> parse_metrics_csv(std::string_view text) {
    std::vector<LocatedMetrics> out;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        auto line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != metrics_csv_header()) throw FormatError("unexpected metrics CSV header", line_no);
            header_seen = true;
            continue;
        }
        std::vector<double> fields;
        std::string cell;
        std::size_t start = 0;
        while (start <= line.size()) {
            const auto comma = line.find(',', start);
            cell.assign(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(v)) {
                throw FormatError("bad numeric field '" + cell + "'", line_no);
            }
            fields.push_back(v);
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (fields.size() != 3 + kMetricCount + 1) throw FormatError("wrong field count", line_no);
        LocatedMetrics r;
        r.location.head = {static_cast<int>(fields[0]), static_cast<int>(fields[1]), static_cast<int>(fields[2])};
        auto& m = r.metrics;
        const auto count = [&](std::size_t i) { return static_cast<std::size_t>(fields[3 + i]); };
        m.area = count(0);
        m.perimeter = count(1);
        m.diversity = count(2);
        m.var_radials = fields[6];
        m.mean_radials = fields[7];
        m.roundness = fields[8];
        m.openness = fields[9];
        m.clutter = fields[10];
        m.reachability = count(8);
        m.occlusivity = fields[12];
        m.drift_length = fields[13];
        m.vista_length = fields[14];
        m.real_perimeter_size = count(12);
        m.degenerate = fields[16] != 0.0;
        out.push_back(r);
    }
    if (!header_seen) throw FormatError("empty metrics CSV", 1);
    return out;
}

} // namespace voxshift::metrics
