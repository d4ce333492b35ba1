#include "voxshift/pca/jacobi.hpp"

#include "voxshift/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace voxshift::pca {

namespace {

double off_diagonal_norm(const SquareMatrix& m) {
    double s = 0.0;
    for (std::size_t r = 0; r < m.n; ++r) {
        for (std::size_t c = 0; c < m.n; ++c) {
            if (r != c) s += m(r, c) * m(r, c);
        }
    }
    return std::sqrt(s);
}

} // namespace

EigenDecomposition jacobi_eigen(const SquareMatrix& symmetric, double tolerance, int max_sweeps) {
    const std::size_t n = symmetric.n;
    SquareMatrix a = symmetric;
    SquareMatrix v(n);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

    double frobenius = 0.0;
    for (double x : a.a) frobenius += x * x;
    frobenius = std::sqrt(frobenius);
    const double threshold = tolerance * frobenius;

    EigenDecomposition out;
    while (off_diagonal_norm(a) > threshold) {
        if (out.sweeps == max_sweeps) throw Error("Jacobi eigensolver did not converge");
        ++out.sweeps;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&a](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });
    for (auto i : order) {
        out.values.push_back(a(i, i));
        std::vector<double> vec(n);
        for (std::size_t k = 0; k < n; ++k) vec[k] = v(k, i);
        out.vectors.push_back(std::move(vec));
    }
    return out;
}

} // namespace voxshift::pca
