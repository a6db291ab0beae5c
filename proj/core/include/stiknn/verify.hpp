#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stiknn/dataset.hpp"
#include "stiknn/knn.hpp"

namespace stiknn {

// Seeded random train/test pair: uniform 2-D positions, uniform labels over
// `classes` tokens.
struct RandomInstance {
    Dataset train;
    Dataset test;
};

RandomInstance make_random_instance(int n, int t, int classes, uint64_t seed);

struct VerifyOptions {
    int n_max = 10;
    int trials = 50;  // per (n, k, t) cell, split between binary and 3-class labels
    uint64_t seed = 42;
    int threads = 1;
    bool check_restricted = false;           // restricted-sum agreement per pair
    std::vector<int> extra_thread_counts{};  // bit-identity reruns of sti_knn
    double fault_offset = 0.0;               // negative-control hook: perturbs each
                                             // computed matrix before comparison
};

struct VerifyWorstCase {
    int n = 0;
    int k = 0;
    int t = 0;
    int trial = 0;
    double diff = 0.0;
};

struct VerifyReport {
    long instances = 0;
    double max_abs_diff = 0.0;  // sti_knn vs brute force, elementwise
    VerifyWorstCase worst;
    double max_restricted_diff = 0.0;      // restricted vs plain definition sum
    double max_efficiency_residual = 0.0;  // |pair_sum - v(N)| across instances
    bool threads_bit_identical = true;

    std::string worst_description() const;
};

// Sweeps n in [2, n_max], k in [1, n], t in {1, 3}, `trials` instances each,
// comparing sti_knn elementwise against the brute-force matrix.
VerifyReport run_oracle_equivalence(const VerifyOptions& options);

}  // namespace stiknn
