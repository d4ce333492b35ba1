#include "voxshift/pca/pca.hpp"

#include "voxshift/errors.hpp"
#include "voxshift/pca/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace voxshift::pca {

namespace {

void require_finite(const MetricRow& row, std::size_t index) {
    for (double v : row) {
        if (!std::isfinite(v)) throw InvalidArgument("non-finite metric value in row " + std::to_string(index));
    }
}

void append_line(std::string& out, std::span<const double> values) {
    char buf[40];
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g", values[i]);
        if (i > 0) out += ' ';
        out += buf;
    }
    out += '\n';
}

} // namespace

StandardizationParams standardization(std::span<const MetricRow> rows) {
    StandardizationParams p;
    const auto n = static_cast<double>(rows.size());
    for (std::size_t c = 0; c < kMetricCount; ++c) {
        double sum = 0.0;
        bool constant = true;
        for (const auto& r : rows) {
            sum += r[c];
            constant = constant && r[c] == rows.front()[c];
        }
        const double mean = sum / n;
        double sq = 0.0;
        for (const auto& r : rows) sq += (r[c] - mean) * (r[c] - mean);
        const double sd = std::sqrt(sq / n);
        p.means[c] = mean;
        p.scales[c] = constant || sd == 0.0 ? 1.0 : sd;
    }
    return p;
}

PcaModel fit_pca(std::span<const MetricRow> rows, std::size_t k) {
    if (rows.size() < 2) throw InvalidArgument("PCA needs at least 2 rows");
    if (k < 1 || k > kMetricCount) throw InvalidArgument("component count must lie in [1, 13]");
    for (std::size_t i = 0; i < rows.size(); ++i) require_finite(rows[i], i);

    PcaModel model;
    model.params = standardization(rows);

    std::vector<MetricRow> z(rows.begin(), rows.end());
    for (auto& r : z) {
        for (std::size_t c = 0; c < kMetricCount; ++c) r[c] = (r[c] - model.params.means[c]) / model.params.scales[c];
    }
    SquareMatrix cov(kMetricCount);
    const double denom = static_cast<double>(rows.size() - 1);
    for (std::size_t i = 0; i < kMetricCount; ++i) {
        for (std::size_t j = i; j < kMetricCount; ++j) {
            double s = 0.0;
            for (const auto& r : z) s += r[i] * r[j];
            cov(i, j) = s / denom;
            cov(j, i) = cov(i, j);
        }
    }

    const auto eig = jacobi_eigen(cov);
    double total = 0.0;
    for (double v : eig.values) total += std::max(v, 0.0);

    for (std::size_t i = 0; i < k; ++i) {
        MetricRow loading{};
        std::size_t largest = 0;
        for (std::size_t c = 0; c < kMetricCount; ++c) {
            loading[c] = eig.vectors[i][c];
            if (std::abs(loading[c]) > std::abs(loading[largest])) largest = c;
        }
        if (loading[largest] < 0.0) {
            for (auto& v : loading) v = -v;
        }
        model.loadings.push_back(loading);
        model.eigenvalues.push_back(eig.values[i]);
        model.explained_variance_ratio.push_back(total > 0.0 ? std::max(eig.values[i], 0.0) / total : 0.0);
    }
    return model;
}

std::vector<double> project(const PcaModel& model, const MetricRow& row) {
    require_finite(row, 0);
    MetricRow z{};
    for (std::size_t c = 0; c < kMetricCount; ++c) z[c] = (row[c] - model.params.means[c]) / model.params.scales[c];
    std::vector<double> out;
    out.reserve(model.loadings.size());
    for (const auto& l : model.loadings) {
        double s = 0.0;
        for (std::size_t c = 0; c < kMetricCount; ++c) s += l[c] * z[c];
        out.push_back(s);
    }
    return out;
}

std::string format_model(const PcaModel& model) {
    std::string out;
    append_line(out, model.params.means);
    append_line(out, model.params.scales);
    for (const auto& l : model.loadings) append_line(out, l);
    append_line(out, model.explained_variance_ratio);
    return out;
}

PcaModel parse_model(std::string_view text) {
    std::vector<std::vector<double>> lines;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::vector<double> values;
        std::string token;
        while (fields >> token) {
            char* end = nullptr;
            const double v = std::strtod(token.c_str(), &end);
            if (end != token.c_str() + token.size() || !std::isfinite(v)) {
                throw FormatError("bad number '" + token + "' in model file", line_no);
            }
            values.push_back(v);
        }
        if (values.empty()) continue;
        lines.push_back(std::move(values));
    }
    if (lines.size() < 4) throw FormatError("model file needs means, scales, >= 1 loading and ratios", line_no);
    const std::size_t k = lines.size() - 3;
    PcaModel model;
    for (std::size_t i = 0; i < lines.size() - 1; ++i) {
        if (lines[i].size() != kMetricCount) throw FormatError("expected 13 values", i + 1);
    }
    if (lines.back().size() != k) throw FormatError("ratio count does not match loading count", lines.size());
    std::copy(lines[0].begin(), lines[0].end(), model.params.means.begin());
    std::copy(lines[1].begin(), lines[1].end(), model.params.scales.begin());
    for (std::size_t c = 0; c < kMetricCount; ++c) {
        if (!(model.params.scales[c] > 0.0)) throw FormatError("scales must be positive", 2);
    }
    for (std::size_t i = 0; i < k; ++i) {
        MetricRow l{};
        std::copy(lines[2 + i].begin(), lines[2 + i].end(), l.begin());
        model.loadings.push_back(l);
    }
    model.explained_variance_ratio = lines.back();
    return model;
}

} // namespace voxshift::pca
