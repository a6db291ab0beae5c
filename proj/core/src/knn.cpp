#include "stiknn/knn.hpp"

#include <cmath>

#include "stiknn/errors.hpp"

namespace stiknn {

Metric metric_from_string(const std::string& name) {
    if (name == "euclidean") return Metric::Euclidean;
    if (name == "manhattan") return Metric::Manhattan;
    throw InputError("unknown metric: " + name);
}

std::string to_string(Metric metric) {
    switch (metric) {
        case Metric::Euclidean: return "euclidean";
        case Metric::Manhattan: return "manhattan";
    }
    return "euclidean";
}

double point_distance(std::span<const double> a, std::span<const double> b, Metric metric) {
    if (a.size() != b.size()) throw InputError("dimension mismatch in distance computation");
    double acc = 0.0;
    switch (metric) {
        case Metric::Euclidean:
            for (size_t d = 0; d < a.size(); ++d) {
                const double diff = a[d] - b[d];
                acc += diff * diff;
            }
            return std::sqrt(acc);
        case Metric::Manhattan:
            for (size_t d = 0; d < a.size(); ++d) acc += std::abs(a[d] - b[d]);
            return acc;
    }
    return acc;
}

}  // namespace stiknn
