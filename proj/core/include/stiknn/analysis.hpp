#pragma once

#include <optional>
#include <vector>

#include "stiknn/dataset.hpp"
#include "stiknn/knn.hpp"
#include "stiknn/matrix.hpp"

namespace stiknn {

struct EfficiencyReport {
    double pair_sum = 0.0;  // diagonal plus upper triangle, each unordered pair once
    double full_sum = 0.0;  // all n^2 entries
    double mean = 0.0;      // full_sum / n^2
    double v_of_n = 0.0;    // grand-coalition score v(N)
    double residual = 0.0;  // pair_sum - v_of_n; zero when efficiency holds
};

EfficiencyReport efficiency_report(const InteractionMatrix& matrix, const Dataset& train,
                                   const Dataset& test, const KnnConfig& cfg);

// Pearson correlation of the flattened matrices (diagonal included).
// Throws when either input has zero variance.
double pearson(const SquareMatrix& a, const SquareMatrix& b);

struct KSweepResult {
    std::vector<int> k_values;
    std::vector<double> stds;   // population std of each flattened matrix
    SquareMatrix correlations;  // pairwise Pearson, unit diagonal
};

KSweepResult k_sweep(const Dataset& train, const Dataset& test, const std::vector<int>& k_values,
                     Metric metric = Metric::Euclidean, int threads = 1);

// Off-diagonal interaction statistics for every ordered class pair.
struct ClassBlockSummary {
    int classes = 0;
    SquareMatrix mean;      // classes x classes
    SquareMatrix mean_abs;  // classes x classes
};

ClassBlockSummary class_block_summary(const SquareMatrix& matrix, const std::vector<int>& labels);

// Per-point suspicion score: cosine similarity of the point's off-diagonal
// row pattern to its own-class centroid (excluding itself) minus similarity
// to the nearest other class centroid. Lower means more suspicious. nullopt
// when the point is its class's only member. Degenerate inputs with no
// distinguishing structure score all points equally.
std::vector<std::optional<double>> mislabel_scores(const SquareMatrix& matrix,
                                                   const std::vector<int>& labels);

// Stable display permutation: sort key (class id, x1, x2, ..., original index).
std::vector<int> display_order(const Dataset& dataset);

Dataset reorder(const Dataset& dataset, const std::vector<int>& perm);

}  // namespace stiknn
