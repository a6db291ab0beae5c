#include "stiknn/matrix.hpp"

#include <cstring>

#include "stiknn/errors.hpp"

namespace stiknn {

bool bit_identical(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.n() != b.n()) return false;
    if (a.flat().empty()) return true;
    return std::memcmp(a.flat().data(), b.flat().data(), a.flat().size() * sizeof(double)) == 0;
}

SquareMatrix reorder(const SquareMatrix& m, const std::vector<int>& perm) {
    const int n = m.n();
    if (static_cast<int>(perm.size()) != n) throw InputError("permutation size mismatch");
    SquareMatrix out(n);
    for (int i = 0; i < n; ++i) {
        const double* src = m.row(perm[i]);
        double* dst = out.row(i);
        for (int j = 0; j < n; ++j) dst[j] = src[perm[j]];
    }
    return out;
}

}  // namespace stiknn
