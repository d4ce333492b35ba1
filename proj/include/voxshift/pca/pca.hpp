#pragma once

#include "voxshift/metrics/metrics.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace voxshift::pca {

using metrics::kMetricCount;
using metrics::MetricRow;

// Column means and population standard deviations; constant columns get
// scale 1 so they standardize to zero.
struct StandardizationParams {
    MetricRow means{};
    MetricRow scales{};
};

struct PcaModel {
    StandardizationParams params;
    std::vector<MetricRow> loadings;              // k unit vectors, largest-|entry| positive
    std::vector<double> explained_variance_ratio;  // k values, non-increasing
    std::vector<double> eigenvalues;               // k values; empty for models read from file

    std::size_t components() const { return loadings.size(); }
};

StandardizationParams standardization(std::span<const MetricRow> rows);

// Standardizes, forms the sample covariance (divide by n - 1), and keeps the
// top-k eigenvectors of the cyclic Jacobi decomposition.
// Throws InvalidArgument for n < 2, k outside [1, 13], or non-finite input.
PcaModel fit_pca(std::span<const MetricRow> rows, std::size_t k);

// loadings . ((row - means) / scales). Throws InvalidArgument on non-finite input.
std::vector<double> project(const PcaModel& model, const MetricRow& row);

// Text model: means line, scales line, one line per loading, one line of
// explained-variance ratios; whitespace separated, 12 significant digits.
std::string format_model(const PcaModel& model);
PcaModel parse_model(std::string_view text);

} // namespace voxshift::pca
