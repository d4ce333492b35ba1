#include "voxshift/sampling.hpp"

#include "voxshift/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace voxshift {

std::size_t sample_size(double fraction, std::size_t count) {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw InvalidArgument("sampling fraction must lie in (0, 1], got " + std::to_string(fraction));
    }
    const double exact = fraction * static_cast<double>(count);
    const double nearest = std::round(exact);
    double chosen = std::ceil(exact);
    if (std::abs(exact - nearest) <= 1e-9 * std::max(1.0, exact)) chosen = nearest;
    return std::min(count, static_cast<std::size_t>(chosen));
}

std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, Rng& rng) {
    k = std::min(k, n);
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

} // namespace voxshift
