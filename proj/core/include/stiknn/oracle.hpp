#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "stiknn/dataset.hpp"
#include "stiknn/knn.hpp"
#include "stiknn/matrix.hpp"

namespace stiknn {

// 2^n enumeration ceiling; the CLI defaults to a softer 15.
inline constexpr int kOracleHardCap = 22;

// Exact C(n, r) in integer arithmetic. Valid for the oracle's range (n <= 22).
uint64_t binomial(int n, int r);

// Discrete second derivative of a valuation at {i, j} on top of S:
// v(S+ij) - v(S+i) - v(S+j) + v(S). S must not contain i or j.
double discrete_delta(const std::vector<int>& s, int i, int j,
                      const std::function<double(const std::vector<int>&)>& valuation);

// Brute-force pair interaction, straight from the definition:
// (2/n) * sum over all S subset of N\{i,j} of delta / C(n-1, |S|),
// averaged over test points. O(2^n); refuses n above kOracleHardCap.
double sti_exact_pair(const Dataset& train, const Dataset& test, const KnnConfig& cfg, int i,
                      int j);

// Same value, summing only subset sizes s >= k-1. Agreement with
// sti_exact_pair is the executable form of the restricted-sum lemma.
double sti_exact_pair_restricted(const Dataset& train, const Dataset& test, const KnnConfig& cfg,
                                 int i, int j);

// Full brute-force matrix: every unordered pair via sti_exact_pair, main
// terms on the diagonal. Ground truth for sti_knn at desk scale.
InteractionMatrix sti_exact_matrix(const Dataset& train, const Dataset& test,
                                   const KnnConfig& cfg);

}  // namespace stiknn
