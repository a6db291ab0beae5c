#pragma once

#include <string>

#include "stiknn/dataset.hpp"
#include "stiknn/matrix.hpp"

namespace stiknn {

// Dataset CSV: UTF-8, header "x1,...,xd,label", shortest-round-trip feature
// decimals, label tokens without commas, rows in index order.
Dataset read_dataset_csv(const std::string& path, DatasetRole role = DatasetRole::Train);
void write_dataset_csv(const Dataset& dataset, const std::string& path);

// Matrix CSV: no header, n rows of n comma-separated decimals at 17
// significant digits (lossless for 64-bit floats).
SquareMatrix read_matrix_csv(const std::string& path);
void write_matrix_csv(const SquareMatrix& matrix, const std::string& path);

}  // namespace stiknn
