#pragma once

#include <cstdint>
#include <vector>

namespace stiknn {

struct BenchRow {
    char sweep = 'n';  // the varied axis: 'n' or 't'
    int n = 0;
    int t = 0;
    int k = 0;
    double seconds = 0.0;  // best of `reps` measurements
};

struct BenchOptions {
    std::vector<int> n_values{250, 500, 1000, 2000};
    std::vector<int> t_values{50, 100, 200, 400};
    int fixed_t = 50;
    int fixed_n = 500;
    int k = 5;
    int reps = 5;  // best-of; robust to one-sided scheduling noise
    int threads = 1;
    uint64_t seed = 7;
};

struct BenchResult {
    std::vector<BenchRow> rows;
    double slope_vs_n = 0.0;  // log-log least-squares fit over the n sweep
    double slope_vs_t = 0.0;  // over the t sweep
};

// Times sti_knn on generated circle data over the two sweeps and fits
// log-log slopes. Per-point timings repeat until stable (min over reps).
BenchResult run_scaling_bench(const BenchOptions& options);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace stiknn
