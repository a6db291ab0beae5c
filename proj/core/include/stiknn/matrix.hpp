#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace stiknn {

// Dense row-major n x n matrix of doubles.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(int n) : n_(n), cells_(static_cast<size_t>(n) * n, 0.0) {}

    int n() const { return n_; }
    double& at(int i, int j) { return cells_[static_cast<size_t>(i) * n_ + j]; }
    double at(int i, int j) const { return cells_[static_cast<size_t>(i) * n_ + j]; }
    double* row(int i) { return cells_.data() + static_cast<size_t>(i) * n_; }
    const double* row(int i) const { return cells_.data() + static_cast<size_t>(i) * n_; }
    std::span<double> flat() { return cells_; }
    std::span<const double> flat() const { return cells_; }

private:
    int n_ = 0;
    std::vector<double> cells_;
};

// Byte-for-byte equality (distinguishes -0.0 from 0.0, unlike operator==).
bool bit_identical(const SquareMatrix& a, const SquareMatrix& b);

// Out(i, j) = m(perm[i], perm[j]). Display reordering is a copy, never a mutation.
SquareMatrix reorder(const SquareMatrix& m, const std::vector<int>& perm);

struct MatrixMeta {
    int k = 0;
    int t = 0;
    uint64_t train_fingerprint = 0;
    uint64_t test_fingerprint = 0;
};

// Symmetric pair-interaction matrix: phi(i, j) off the diagonal, main terms on it.
struct InteractionMatrix {
    SquareMatrix values;
    MatrixMeta meta;
};

// One-test-point interaction matrix (zero diagonal). Within it, all
// above-diagonal entries of a ranked column are equal.
using SingleTestMatrix = SquareMatrix;

}  // namespace stiknn
