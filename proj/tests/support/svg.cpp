#include "svg.hpp"

#include <regex>
#include <stdexcept>

namespace svg {

namespace {

double attr(const std::string& tag, const std::string& name) {
    const std::regex re("\\s" + name + "=\"([^\"]*)\"");
    std::smatch m;
    if (!std::regex_search(tag, m, re)) throw std::runtime_error("missing attribute " + name);
    return std::stod(m[1]);
}

std::vector<std::string> tags(const std::string& doc, const std::string& element) {
    std::vector<std::string> out;
    const std::regex re("<" + element + "\\s[^>]*>");
    for (auto it = std::sregex_iterator(doc.begin(), doc.end(), re); it != std::sregex_iterator(); ++it)
        out.push_back(it->str());
    return out;
}

} // namespace

voxshift::Point2 Frame::canvas(const voxshift::Point2& d) const {
    const double u = (d.x - x_min) / (x_max - x_min);
    const double v = (d.y - y_min) / (y_max - y_min);
    return {margin + u * (width - 2 * margin), (height - margin) - v * (height - 2 * margin)};
}

Frame frame(const std::string& doc) {
    const auto root = tags(doc, "svg").at(0);
    Frame f;
    f.width = attr(root, "width");
    f.height = attr(root, "height");
    f.margin = attr(root, "data-margin");
    f.x_min = attr(root, "data-x-min");
    f.x_max = attr(root, "data-x-max");
    f.y_min = attr(root, "data-y-min");
    f.y_max = attr(root, "data-y-max");
    return f;
}

std::vector<voxshift::Point2> circles(const std::string& doc) {
    std::vector<voxshift::Point2> out;
    for (const auto& t : tags(doc, "circle")) out.push_back({attr(t, "cx"), attr(t, "cy")});
    return out;
}

std::vector<Line> lines(const std::string& doc) {
    std::vector<Line> out;
    const std::regex cls("class=\"([^\"]*)\"");
    for (const auto& t : tags(doc, "line")) {
        std::smatch m;
        std::regex_search(t, m, cls);
        out.push_back({m[1], attr(t, "x1"), attr(t, "y1"), attr(t, "x2"), attr(t, "y2")});
    }
    return out;
}

} // namespace svg
