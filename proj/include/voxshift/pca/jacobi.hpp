#pragma once

#include <cstddef>
#include <vector>

namespace voxshift::pca {

// Dense square matrix, row-major.
struct SquareMatrix {
    std::size_t n = 0;
    std::vector<double> a;

    explicit SquareMatrix(std::size_t size = 0) : n(size), a(size * size, 0.0) {}
    double& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
    double operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }
};

struct EigenDecomposition {
    std::vector<double> values;                // descending
    std::vector<std::vector<double>> vectors;  // vectors[i] pairs with values[i], unit length
    int sweeps = 0;
};

// Cyclic Jacobi for a symmetric matrix. Sweeps visit (p, q) pairs in
// row order until the off-diagonal Frobenius norm is at most
// tolerance * ||A||_F. Eigenpairs are sorted by value, descending, ties by
// original diagonal position; vector signs are as produced by the rotations.
EigenDecomposition jacobi_eigen(const SquareMatrix& symmetric, double tolerance = 1e-12, int max_sweeps = 100);

} // namespace voxshift::pca
