#pragma once

#include <span>
#include <vector>

#include "stiknn/dataset.hpp"
#include "stiknn/knn.hpp"

namespace stiknn {

// Train indices sorted by ascending distance to one query point. Equal
// distances keep ascending original-index order.
struct NeighborRanking {
    std::vector<int> order;        // rank -> original train index
    std::vector<double> distance;  // non-decreasing, parallel to order
    std::vector<int> rank_of;      // original train index -> rank
};

NeighborRanking rank_neighbors(const Dataset& train, std::span<const double> query,
                               Metric metric = Metric::Euclidean);

// Test labels translated into the train dataset's id space (the two datasets
// intern independently). Tokens absent from the train set map to -1, which
// matches no train label.
std::vector<int> align_labels(const Dataset& train, const Dataset& test);

// Likelihood contribution of a single train point: 1[label match] / k.
double u_single(int train_label, int test_label, int k);

// Likelihood of the right label when training on `subset`: the min(k, |subset|)
// members nearest to the test point vote. u(empty) = 0.
double u_subset(const std::vector<int>& subset, const NeighborRanking& ranking,
                const std::vector<int>& train_labels, int test_label, int k);

// Mean of u_subset over all test points, each with its own ranking.
double v_score(const std::vector<int>& subset, const Dataset& train, const Dataset& test,
               const KnnConfig& cfg);

// Leave-one-out baseline: entry i = v(N) - v(N \ {i}).
std::vector<double> loo_values(const Dataset& train, const Dataset& test, const KnnConfig& cfg);

}  // namespace stiknn
