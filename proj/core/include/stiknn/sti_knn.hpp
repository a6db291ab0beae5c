#pragma once

#include <vector>

#include "stiknn/dataset.hpp"
#include "stiknn/knn.hpp"
#include "stiknn/matrix.hpp"
#include "stiknn/valuation.hpp"

namespace stiknn {

// Interaction of the two train points ranked farthest from the test point:
// -2(n-k)/(n(n-1)) * u_last, the seed of the superdiagonal recursion.
double last_pair_term(int n, int k, double u_last);

// One step of the superdiagonal recursion, consuming 1-based ranked column j
// (3 <= j <= n): adds 2(j-k-1)/((j-2)(j-1)) * (u_j - u_jm1) when j > k+1,
// otherwise carries phi_next through unchanged.
double superdiag_step(double phi_next, int j, int k, double u_j, double u_jm1);

// Exact pair-interaction matrix for a single test point, in original train
// coordinates. Off-diagonal only; the diagonal stays zero for the caller to
// fill. Exactly symmetric (both cells written from one value).
SingleTestMatrix sti_knn_one_test(const NeighborRanking& ranking,
                                  const std::vector<int>& train_labels, int test_label, int k);

// Main terms: entry i = v({i}) - v(empty) = (1/(t*k)) * #{test points whose
// label equals y_i}. Independent of feature positions.
std::vector<double> main_terms(const Dataset& train, const Dataset& test, int k);

// Exact pair-interaction Shapley matrix in O(t * n^2): mean of the single-test
// matrices off the diagonal, main terms on it. Bit-identical output for any
// `threads` value (fixed-order block accumulation).
InteractionMatrix sti_knn(const Dataset& train, const Dataset& test, const KnnConfig& cfg,
                          int threads = 1);

}  // namespace stiknn
