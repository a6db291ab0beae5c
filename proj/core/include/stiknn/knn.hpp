#pragma once

#include <span>
#include <string>

namespace stiknn {

enum class Metric { Euclidean, Manhattan };

Metric metric_from_string(const std::string& name);
std::string to_string(Metric metric);

double point_distance(std::span<const double> a, std::span<const double> b, Metric metric);

struct KnnConfig {
    int k = 5;
    Metric metric = Metric::Euclidean;
};

}  // namespace stiknn
