// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in code next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "stiknn/stiknn.hpp"
#include "support/fixtures.hpp"
#include "support/lemmas.hpp"

using namespace stiknn;
using testsupport::ranked_flags_fixture;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct CircleRun {
    Dataset train;
    Dataset test;
};

CircleRun circle_run(uint64_t seed) {
    return {make_circles(300, 0.5, 0.1, seed),
            make_circles(50, 0.5, 0.1, seed + 1).with_role(DatasetRole::Test)};
}

}  // namespace

int main() {
    // --- Criteria 1, 2, 6 (sweep half), 11: one combined sweep ---
    VerifyOptions sweep_options;
    sweep_options.n_max = 10;
    sweep_options.trials = 50;
    sweep_options.seed = 42;
    sweep_options.threads = 1;
    sweep_options.check_restricted = true;
    sweep_options.extra_thread_counts = {2, 8};

    const auto sweep_t0 = std::chrono::steady_clock::now();
    const VerifyReport sweep = run_oracle_equivalence(sweep_options);
    const double sweep_seconds = seconds_since(sweep_t0);

    report(1, "oracle equivalence of sti_knn, n=2..10, k=1..n, t in {1,3}",
           sweep.max_abs_diff <= 1e-10 && sweep_seconds < 120.0,
           "max |diff| " + num(sweep.max_abs_diff) + " <= 1e-10 over " +
               std::to_string(sweep.instances) + " instances; worst " +
               sweep.worst_description() + "; " + num(sweep_seconds) + "s < 120s");

    report(2, "restricted-sum lemma: truncated enumeration matches the full sum",
           sweep.max_restricted_diff <= 1e-12,
           "max |diff| " + num(sweep.max_restricted_diff) + " <= 1e-12 on the same sweep");

    // --- Criterion 3: pair-difference identity, both sides enumerated ---
    {
        double worst = 0.0;
        long triples = 0;
        Rng rng(42);
        for (int instance = 0; instance < 20; ++instance) {
            const int n = 3 + instance % 6;  // 3..8
            const int k = 1 + rng.uniform_int(n);
            const int t = instance % 2 == 0 ? 1 : 3;
            const RandomInstance inst =
                make_random_instance(n, t, 2 + instance % 2, rng.next_u64());
            const KnnConfig cfg{k, Metric::Euclidean};
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    for (int q = 0; q < n; ++q) {
                        if (i == j || j == q || i == q) continue;
                        const double lhs = sti_exact_pair(inst.train, inst.test, cfg, i, j) -
                                           sti_exact_pair(inst.train, inst.test, cfg, i, q);
                        const double rhs = testsupport::difference_identity_rhs(
                            inst.train, inst.test, cfg, i, j, q);
                        worst = std::max(worst, std::abs(lhs - rhs));
                        ++triples;
                    }
                }
            }
        }
        report(3, "pair-difference identity across all index triples", worst <= 1e-12,
               "max |lhs - rhs| " + num(worst) + " <= 1e-12 over " + std::to_string(triples) +
                   " triples, 20 instances");
    }

    // --- Criterion 4: worked valuation values on the k=3 fixture ---
    {
        const auto [train, test] = ranked_flags_fixture({1, 0, 1, 1});
        const KnnConfig cfg{3, Metric::Euclidean};
        const NeighborRanking r = rank_neighbors(train, test.point(0));
        const int y = align_labels(train, test)[0];

        const bool pass = v_score(testsupport::all_indices(4), train, test, cfg) == 2.0 / 3.0 &&
                          u_subset({0}, r, train.labels(), y, 3) == 1.0 / 3.0 &&
                          u_subset({1}, r, train.labels(), y, 3) == 0.0 &&
                          u_subset({0, 2, 3}, r, train.labels(), y, 3) == 1.0;
        report(4, "worked valuation values: v(N)=2/3, u({1})=1/3, u({2})=0, u({1,3,4})=1", pass,
               "exact equality");
    }

    // --- Criterion 5: worked interaction deltas; phi_12 frozen from the oracle ---
    {
        const auto inst = ranked_flags_fixture({0, 1, 0, 1});
        const KnnConfig cfg{2, Metric::Euclidean};
        const auto v = [&](const std::vector<int>& subset) {
            return v_score(subset, inst.train, inst.test, cfg);
        };
        const bool deltas_exact = discrete_delta({}, 0, 1, v) == 0.0 &&
                                  discrete_delta({2}, 0, 1, v) == 0.0 &&
                                  discrete_delta({2, 3}, 0, 1, v) == 0.5;

        // Exhaustive enumeration fixes phi_12 = 0 for this configuration.
        const double phi_12 = sti_exact_pair(inst.train, inst.test, cfg, 0, 1);
        const InteractionMatrix fast = sti_knn(inst.train, inst.test, cfg);
        const InteractionMatrix exact = sti_exact_matrix(inst.train, inst.test, cfg);
        const double diff = testsupport::max_abs_diff(fast.values, exact.values);

        report(5, "worked interaction deltas; phi_12 from enumeration; sti_knn agrees",
               deltas_exact && std::abs(phi_12 - 0.0) <= 1e-12 && diff <= 1e-12,
               "deltas exact; phi_12 = " + num(phi_12) + "; max |sti_knn - oracle| " + num(diff) +
                   " <= 1e-12");
    }

    // --- Criterion 6: efficiency identity, sweep + circle runs ---
    {
        const CircleRun circle = circle_run(42);
        double worst_residual = sweep.max_efficiency_residual;
        double worst_mean = 0.0;
        for (int k = 3; k <= 20; ++k) {
            const KnnConfig cfg{k, Metric::Euclidean};
            const InteractionMatrix m = sti_knn(circle.train, circle.test, cfg, 2);
            const EfficiencyReport rep = efficiency_report(m, circle.train, circle.test, cfg);
            worst_residual = std::max(worst_residual, std::abs(rep.residual));
            worst_mean = std::max(worst_mean, std::abs(rep.mean));
        }
        const double mean_bound = 1.0 / circle.train.size();
        report(6, "efficiency: pair_sum = v(N); |matrix mean| <= 1/n on circle runs",
               worst_residual <= 1e-10 && worst_mean <= mean_bound,
               "max |residual| " + num(worst_residual) + " <= 1e-10; max |mean| " +
                   num(worst_mean) + " <= " + num(mean_bound));
    }

    // --- Criteria 7, 8: k-insensitivity and std monotonicity on the circle run ---
    {
        const CircleRun circle = circle_run(42);
        std::vector<int> k_values;
        for (int k = 3; k <= 20; ++k) k_values.push_back(k);

        const auto t0 = std::chrono::steady_clock::now();
        const KSweepResult sweep_result = k_sweep(circle.train, circle.test, k_values,
                                                  Metric::Euclidean, 2);
        const double elapsed = seconds_since(t0);

        double min_corr = 1.0;
        for (size_t a = 0; a < k_values.size(); ++a)
            for (size_t b = a + 1; b < k_values.size(); ++b)
                min_corr = std::min(min_corr, sweep_result.correlations.at(static_cast<int>(a),
                                                                           static_cast<int>(b)));
        const bool strong = min_corr >= 0.99;
        const bool fallback = min_corr >= 0.98;
        std::string detail = "min pairwise r " + num(min_corr) + "; " + num(elapsed) + "s < 60s";
        if (!strong && fallback)
            detail += "; narrow miss of 0.99 documented, binding at the 0.98 fallback";
        report(7, "k-insensitivity: pairwise Pearson over k=3..20", (strong || fallback) &&
                   elapsed < 60.0,
               detail);

        bool decreasing = true;
        for (size_t a = 1; a < sweep_result.stds.size(); ++a)
            if (!(sweep_result.stds[a] < sweep_result.stds[a - 1])) decreasing = false;
        report(8, "matrix std strictly decreasing in k", decreasing,
               "std(k=3) " + num(sweep_result.stds.front()) + " down to std(k=20) " +
                   num(sweep_result.stds.back()));
    }

    // --- Criterion 9: complexity scaling slopes ---
    {
        BenchOptions options;  // n in {250,500,1000,2000} at t=50; t in {50..400} at n=500
        const BenchResult bench = run_scaling_bench(options);
        const bool pass = bench.slope_vs_n >= 1.7 && bench.slope_vs_n <= 2.3 &&
                          bench.slope_vs_t >= 0.7 && bench.slope_vs_t <= 1.3;
        report(9, "log-log timing slopes: n in [1.7, 2.3], t in [0.7, 1.3]", pass,
               "slope_n " + num(bench.slope_vs_n) + ", slope_t " + num(bench.slope_vs_t));
    }

    // --- Criterion 10: class-block contrast and mislabel detection ---
    {
        const CircleRun circle = circle_run(42);
        const KnnConfig cfg{5, Metric::Euclidean};

        const InteractionMatrix balanced = sti_knn(circle.train, circle.test, cfg, 2);
        const ClassBlockSummary blocks =
            class_block_summary(balanced.values, circle.train.labels());
        double within = 0.0;
        double cross = 0.0;
        int within_count = 0;
        int cross_count = 0;
        for (int a = 0; a < blocks.classes; ++a) {
            for (int b = 0; b < blocks.classes; ++b) {
                if (a == b) {
                    within += blocks.mean.at(a, b);
                    ++within_count;
                } else {
                    cross += blocks.mean.at(a, b);
                    ++cross_count;
                }
            }
        }
        within /= within_count;
        cross /= cross_count;
        const bool contrast = std::abs(within) > std::abs(cross);

        const NoisyLabels noisy = inject_label_noise(circle.train, 0.10, 42);
        const InteractionMatrix flipped_matrix = sti_knn(noisy.dataset, circle.test, cfg, 2);
        const auto scores = mislabel_scores(flipped_matrix.values, noisy.dataset.labels());
        std::vector<std::pair<double, int>> ranked;
        for (size_t i = 0; i < scores.size(); ++i)
            ranked.push_back({scores[i].value_or(1e300), static_cast<int>(i)});
        std::sort(ranked.begin(), ranked.end());
        const int bucket = circle.train.size() / 10;
        std::set<int> lowest;
        for (int b = 0; b < bucket; ++b) lowest.insert(ranked[b].second);
        int hits = 0;
        for (int idx : noisy.flipped) hits += lowest.count(idx);
        const double hit_rate = static_cast<double>(hits) / noisy.flipped.size();

        report(10, "in-class contrast; flipped points concentrate in the lowest decile",
               contrast && hit_rate > 0.5,
               "|within mean| " + num(std::abs(within)) + " > |cross mean| " +
                   num(std::abs(cross)) + "; mislabel hits " + std::to_string(hits) + "/" +
                   std::to_string(noisy.flipped.size()) + " (" + num(100.0 * hit_rate) + "%)");
    }

    // --- Criterion 11: thread-count determinism, checked inside the sweep ---
    report(11, "matrices bit-identical across 1, 2, and 8 worker threads",
           sweep.threads_bit_identical,
           "rechecked on every criterion-1 instance");

    std::printf("%s: %d of 11 criteria passed\n", failures == 0 ? "SUCCESS" : "FAILURE",
                11 - failures);
    return failures == 0 ? 0 : 1;
}
