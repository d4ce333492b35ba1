#include "voxshift/errors.hpp"
#include "voxshift/viz/plot.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>

namespace voxshift::viz {

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string fmt_g(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

void require_finite(const Point2& p, std::size_t index, const char* what) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
        throw InvalidArgument(std::string("non-finite ") + what + " at index " + std::to_string(index));
    }
}

AxisRange auto_range(double lo, double hi) {
    if (hi - lo <= 0.0) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
}

// Header, background, frame, title and axis labels.
std::string open_document(const AxisTransform& t, const PlotSpec& spec, std::string_view kind) {
    const double m = AxisTransform::kMargin;
    std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) + "\" height=\"" +
         std::to_string(spec.height) + "\" viewBox=\"0 0 " + std::to_string(spec.width) + ' ' +
         std::to_string(spec.height) + "\" data-kind=\"" + std::string(kind) + "\" data-x-min=\"" + fmt_g(t.x.min) +
         "\" data-x-max=\"" + fmt_g(t.x.max) + "\" data-y-min=\"" + fmt_g(t.y.min) + "\" data-y-max=\"" +
         fmt_g(t.y.max) + "\" data-margin=\"" + fmt(m) + "\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(spec.width) + "\" height=\"" +
         std::to_string(spec.height) + "\" fill=\"white\"/>\n";
    s += "<rect class=\"frame\" x=\"" + fmt(m) + "\" y=\"" + fmt(m) + "\" width=\"" + fmt(t.width - 2 * m) +
         "\" height=\"" + fmt(t.height - 2 * m) + "\" fill=\"none\" stroke=\"#444444\"/>\n";
    if (!spec.title.empty()) {
        s += "<text class=\"title\" x=\"" + fmt(t.width / 2) + "\" y=\"" + fmt(m / 2) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" + escape(spec.title) +
             "</text>\n";
    }
    s += "<text class=\"label\" x=\"" + fmt(t.width / 2) + "\" y=\"" + fmt(t.height - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">PC-1</text>\n";
    s += "<text class=\"label\" x=\"14\" y=\"" + fmt(t.height / 2) + "\" transform=\"rotate(-90 14 " +
         fmt(t.height / 2) + ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">PC-2</text>\n";
    const auto tick = [&](double x, double y, const char* anchor, double v) {
        s += "<text class=\"tick\" x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" text-anchor=\"" + anchor +
             "\" font-family=\"sans-serif\" font-size=\"10\">" + fmt_g(v) + "</text>\n";
    };
    tick(m, t.height - m + 14, "start", t.x.min);
    tick(t.width - m, t.height - m + 14, "end", t.x.max);
    tick(m - 4, t.height - m, "end", t.y.min);
    tick(m - 4, m + 10, "end", t.y.max);
    return s;
}

} // namespace

void PlotSpec::validate() const {
    if (width <= 2 * AxisTransform::kMargin || height <= 2 * AxisTransform::kMargin) {
        throw InvalidArgument("plot dimensions must exceed twice the margin");
    }
    for (const auto& r : {x_range, y_range}) {
        if (r && !(r->max > r->min)) throw InvalidArgument("axis range must have max > min");
    }
}

Point2 AxisTransform::to_canvas(const Point2& p) const {
    const double w = width - 2 * kMargin;
    const double h = height - 2 * kMargin;
    return {kMargin + (p.x - x.min) / (x.max - x.min) * w, height - kMargin - (p.y - y.min) / (y.max - y.min) * h};
}

Point2 AxisTransform::to_data(const Point2& c) const {
    const double w = width - 2 * kMargin;
    const double h = height - 2 * kMargin;
    return {x.min + (c.x - kMargin) / w * (x.max - x.min), y.min + (height - kMargin - c.y) / h * (y.max - y.min)};
}

AxisTransform make_transform(std::span<const Point2> points, const PlotSpec& spec) {
    spec.validate();
    double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;
    if (!points.empty()) {
        x_lo = x_hi = points.front().x;
        y_lo = y_hi = points.front().y;
    }
    for (const auto& p : points) {
        x_lo = std::min(x_lo, p.x);
        x_hi = std::max(x_hi, p.x);
        y_lo = std::min(y_lo, p.y);
        y_hi = std::max(y_hi, p.y);
    }
    AxisTransform t;
    t.x = spec.x_range ? *spec.x_range : auto_range(x_lo, x_hi);
    t.y = spec.y_range ? *spec.y_range : auto_range(y_lo, y_hi);
    t.width = spec.width;
    t.height = spec.height;
    return t;
}

std::string render_era_scatter(std::span<const Point2> points, const PlotSpec& spec) {
    if (points.empty()) throw InvalidArgument("ERA scatter needs at least one point");
    for (std::size_t i = 0; i < points.size(); ++i) require_finite(points[i], i, "point");
    const auto t = make_transform(points, spec);
    std::string s = open_document(t, spec, "era");
    s += "<g class=\"points\" fill=\"#3b528b\" fill-opacity=\"0.6\">\n";
    for (const auto& p : points) {
        const auto c = t.to_canvas(p);
        s += "<circle class=\"pt\" cx=\"" + fmt(c.x) + "\" cy=\"" + fmt(c.y) + "\" r=\"2.5\"/>\n";
    }
    s += "</g>\n</svg>\n";
    return s;
}

std::string render_flow_plot(std::span<const shift::ShiftRecord> records, const PlotSpec& spec) {
    if (records.empty()) throw InvalidArgument("flow plot needs at least one record");
    std::vector<Point2> ends;
    for (std::size_t i = 0; i < records.size(); ++i) {
        require_finite(records[i].pre, i, "pre point");
        require_finite(records[i].post, i, "post point");
        ends.push_back(records[i].pre);
        ends.push_back(records[i].post);
    }
    const auto t = make_transform(ends, spec);

    std::vector<bool> highlighted(records.size(), false);
    std::vector<std::size_t> order;
    if (spec.highlight_count > 0) {
        // Same ranking as top_k_shifts, kept by index.
        std::vector<std::size_t> idx(records.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            if (records[a].magnitude != records[b].magnitude) return records[a].magnitude > records[b].magnitude;
            return yzx_less(records[a].pair.base_head, records[b].pair.base_head);
        });
        idx.resize(std::min(idx.size(), spec.highlight_count));
        for (auto i : idx) highlighted[i] = true;
        order = idx;
    }

    std::string s = open_document(t, spec, "flow");
    s += "<defs>\n"
         "<marker id=\"head\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" refY=\"3\" orient=\"auto\">"
         "<path d=\"M0,0 L6,3 L0,6 z\" fill=\"#3b528b\"/></marker>\n"
         "<marker id=\"head-hl\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" refY=\"3\" orient=\"auto\">"
         "<path d=\"M0,0 L6,3 L0,6 z\" fill=\"rgb(220,20,20)\"/></marker>\n"
         "</defs>\n";
    const auto line = [&](const shift::ShiftRecord& r, bool hl) {
        const auto a = t.to_canvas(r.pre);
        const auto b = t.to_canvas(r.post);
        s += std::string("<line class=\"") + (hl ? "arrow hl" : "arrow") + "\" x1=\"" + fmt(a.x) + "\" y1=\"" +
             fmt(a.y) + "\" x2=\"" + fmt(b.x) + "\" y2=\"" + fmt(b.y) + "\" stroke=\"" +
             (hl ? "rgb(220,20,20)" : "#3b528b") + "\" stroke-width=\"" + (hl ? "2" : "1") +
             "\" stroke-linecap=\"round\" marker-end=\"url(#" + (hl ? "head-hl" : "head") + ")\"/>\n";
    };
    s += "<g class=\"arrows\" stroke-opacity=\"0.7\">\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!highlighted[i]) line(records[i], false);
    }
    s += "</g>\n<g class=\"highlights\">\n";
    for (auto i : order) line(records[i], true);
    s += "</g>\n</svg>\n";
    return s;
}

Rgb RasterImage::pixel(int x, int y) const {
    const auto i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)) * 3;
    return {rgb[i], rgb[i + 1], rgb[i + 2]};
}

std::string RasterImage::to_ppm() const {
    std::string out = "P6\n";
    if (!comment.empty()) out += "# " + comment + '\n';
    out += std::to_string(width) + ' ' + std::to_string(height) + "\n255\n";
    out.append(reinterpret_cast<const char*>(rgb.data()), rgb.size());
    return out;
}

RasterImage parse_ppm(std::string_view bytes) {
    std::size_t pos = 0;
    RasterImage img;
    const auto token = [&]() {
        for (;;) {
            while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
            if (pos >= bytes.size() || bytes[pos] != '#') break;
            const auto eol = std::min(bytes.find('\n', pos), bytes.size());
            auto text = bytes.substr(pos + 1, eol - pos - 1);
            if (!text.empty() && text.front() == ' ') text.remove_prefix(1);
            img.comment = std::string(text);
            pos = eol;
        }
        const auto start = pos;
        while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
        return std::string(bytes.substr(start, pos - start));
    };
    if (token() != "P6") throw FormatError("not a binary PPM", 0);
    try {
        img.width = std::stoi(token());
        img.height = std::stoi(token());
        if (std::stoi(token()) != 255) throw FormatError("unsupported PPM max value", pos);
    } catch (const std::logic_error&) {
        throw FormatError("bad PPM header", pos);
    }
    ++pos;  // single whitespace byte before the raster
    const auto size = static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height) * 3;
    if (img.width <= 0 || img.height <= 0 || bytes.size() < pos || bytes.size() - pos != size) {
        throw FormatError("PPM raster size mismatch", pos);
    }
    img.rgb.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end());
    return img;
}

OverlayResult render_overlay(const world::VoxelWorld& world, std::span<const ProjectedHeadspace> projected,
                             int ground_threshold, const PlotSpec& /*spec*/, ColumnAgg agg, const ColorRamp& ramp) {
    const auto& o = world.origin();
    const auto& d = world.dims();
    if (ground_threshold < o.y || ground_threshold >= o.y + d.sy) {
        throw InvalidArgument("ground threshold " + std::to_string(ground_threshold) + " outside world y-range");
    }

    struct Acc {
        double sum = 0.0;
        std::size_t count = 0;
        int top_y = 0;
        double top_value = 0.0;
    };
    std::vector<Acc> acc(static_cast<std::size_t>(d.sx) * static_cast<std::size_t>(d.sz));
    for (std::size_t i = 0; i < projected.size(); ++i) {
        const auto& p = projected[i];
        require_finite(p.pc, i, "projected point");
        const auto& h = p.location.head;
        if (h.y < ground_threshold || !world.contains({h.x, o.y, h.z})) continue;
        auto& a = acc[static_cast<std::size_t>(h.z - o.z) * static_cast<std::size_t>(d.sx) +
                      static_cast<std::size_t>(h.x - o.x)];
        a.sum += p.pc.x;
        if (a.count == 0 || h.y > a.top_y) {
            a.top_y = h.y;
            a.top_value = p.pc.x;
        }
        ++a.count;
    }

    OverlayResult out;
    out.values.resize(acc.size());
    bool any = false;
    for (std::size_t i = 0; i < acc.size(); ++i) {
        if (acc[i].count == 0) continue;
        const double v = agg == ColumnAgg::Mean ? acc[i].sum / static_cast<double>(acc[i].count) : acc[i].top_value;
        out.values[i] = v;
        if (!any) {
            out.value_min = out.value_max = v;
            any = true;
        }
        out.value_min = std::min(out.value_min, v);
        out.value_max = std::max(out.value_max, v);
    }

    out.image.width = d.sx;
    out.image.comment = "pc1-min=" + fmt_g(out.value_min) + " pc1-max=" + fmt_g(out.value_max);
    out.image.height = d.sz;
    out.image.rgb.reserve(acc.size() * 3);
    const double span = out.value_max - out.value_min;
    for (const auto& v : out.values) {
        Rgb c = kNoDataColor;
        if (v) {
            long idx = 128;
            if (span > 0.0) idx = std::lround((*v - out.value_min) / span * 255.0);
            c = ramp[static_cast<std::size_t>(std::clamp(idx, 0L, 255L))];
        }
        out.image.rgb.push_back(c.r);
        out.image.rgb.push_back(c.g);
        out.image.rgb.push_back(c.b);
    }
    return out;
}

} // namespace voxshift::viz
