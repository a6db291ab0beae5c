#include "stiknn/verify.hpp"

#include <cmath>
#include <cstdio>

#include "stiknn/analysis.hpp"
#include "stiknn/datagen.hpp"
#include "stiknn/matrix.hpp"
#include "stiknn/oracle.hpp"
#include "stiknn/sti_knn.hpp"

namespace stiknn {

RandomInstance make_random_instance(int n, int t, int classes, uint64_t seed) {
    Rng rng(seed);
    auto random_set = [&](int count, DatasetRole role) {
        std::vector<double> features;
        features.reserve(static_cast<size_t>(count) * 2);
        std::vector<std::string> labels;
        labels.reserve(count);
        for (int i = 0; i < count; ++i) {
            features.push_back(rng.uniform());
            features.push_back(rng.uniform());
            labels.push_back(std::to_string(rng.uniform_int(classes)));
        }
        return Dataset(2, std::move(features), labels, role);
    };
    RandomInstance instance{random_set(n, DatasetRole::Train),
                            random_set(t, DatasetRole::Test)};
    return instance;
}

std::string VerifyReport::worst_description() const {
    char diff[32];
    std::snprintf(diff, sizeof diff, "%.3g", worst.diff);
    return "n=" + std::to_string(worst.n) + " k=" + std::to_string(worst.k) +
           " t=" + std::to_string(worst.t) + " trial=" + std::to_string(worst.trial) +
           " |diff|=" + diff;
}

VerifyReport run_oracle_equivalence(const VerifyOptions& options) {
    VerifyReport report;
    for (int n = 2; n <= options.n_max; ++n) {
        for (int k = 1; k <= n; ++k) {
            for (int t : {1, 3}) {
                for (int trial = 0; trial < options.trials; ++trial) {
                    const int classes = trial % 2 == 0 ? 2 : 3;
                    const uint64_t instance_seed = Rng::mix(
                        options.seed, (static_cast<uint64_t>(n) << 40) ^
                                          (static_cast<uint64_t>(k) << 28) ^
                                          (static_cast<uint64_t>(t) << 20) ^
                                          static_cast<uint64_t>(trial));
                    const RandomInstance instance =
                        make_random_instance(n, t, classes, instance_seed);
                    const KnnConfig cfg{k, Metric::Euclidean};

                    InteractionMatrix fast =
                        sti_knn(instance.train, instance.test, cfg, options.threads);
                    if (options.fault_offset != 0.0)
                        fast.values.at(0, n - 1) += options.fault_offset;
                    const InteractionMatrix exact =
                        sti_exact_matrix(instance.train, instance.test, cfg);

                    double diff = 0.0;
                    for (size_t c = 0; c < fast.values.flat().size(); ++c)
                        diff = std::max(diff, std::abs(fast.values.flat()[c] -
                                                       exact.values.flat()[c]));
                    if (diff > report.max_abs_diff) {
                        report.max_abs_diff = diff;
                        report.worst = {n, k, t, trial, diff};
                    }

                    const EfficiencyReport eff =
                        efficiency_report(fast, instance.train, instance.test, cfg);
                    report.max_efficiency_residual =
                        std::max(report.max_efficiency_residual, std::abs(eff.residual));

                    if (options.check_restricted) {
                        for (int i = 0; i < n; ++i) {
                            for (int j = i + 1; j < n; ++j) {
                                const double full = sti_exact_pair(instance.train, instance.test,
                                                                   cfg, i, j);
                                const double restricted = sti_exact_pair_restricted(
                                    instance.train, instance.test, cfg, i, j);
                                report.max_restricted_diff = std::max(
                                    report.max_restricted_diff, std::abs(full - restricted));
                            }
                        }
                    }

                    for (int extra : options.extra_thread_counts) {
                        const InteractionMatrix rerun =
                            sti_knn(instance.train, instance.test, cfg, extra);
                        if (!bit_identical(rerun.values, fast.values))
                            report.threads_bit_identical = false;
                    }

                    ++report.instances;
                }
            }
        }
    }
    return report;
}

}  // namespace stiknn
