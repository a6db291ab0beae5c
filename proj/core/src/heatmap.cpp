#include "stiknn/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "stiknn/errors.hpp"

namespace stiknn {

void write_heatmap_ppm(const SquareMatrix& matrix, const std::string& path) {
    const int n = matrix.n();
    if (n < 1) throw InputError("cannot render an empty matrix");

    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) scale = std::max(scale, std::abs(matrix.at(i, j)));
    if (scale == 0.0) scale = 1.0;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open for writing");
    out << "P6\n" << n << ' ' << n << "\n255\n";

    std::string pixels;
    pixels.reserve(static_cast<size_t>(n) * n * 3);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double m = std::clamp(matrix.at(i, j) / scale, -1.0, 1.0);
            const auto faded = static_cast<char>(std::llround(255.0 * (1.0 - std::abs(m))));
            const char full = static_cast<char>(255);
            if (m > 0.0) {  // white -> red
                pixels.push_back(full);
                pixels.push_back(faded);
                pixels.push_back(faded);
            } else if (m < 0.0) {  // white -> blue
                pixels.push_back(faded);
                pixels.push_back(faded);
                pixels.push_back(full);
            } else {
                pixels.push_back(full);
                pixels.push_back(full);
                pixels.push_back(full);
            }
        }
    }
    out.write(pixels.data(), static_cast<std::streamsize>(pixels.size()));
    if (!out) throw IoError(path + ": write failed");
}

}  // namespace stiknn
