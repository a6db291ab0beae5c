#pragma once

#include <string>

#include "stiknn/matrix.hpp"

namespace stiknn {

// Binary PPM (P6) heatmap, one pixel per cell. Diverging colormap: each value
// is scaled by the largest off-diagonal magnitude (1 if all zero) and clamped
// to [-1, 1]; negatives blend white to blue, positives white to red.
// Bit-exact for a given matrix.
void write_heatmap_ppm(const SquareMatrix& matrix, const std::string& path);

}  // namespace stiknn
