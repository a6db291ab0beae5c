#include "stiknn/bench.hpp"

#include <chrono>
#include <cmath>

#include "stiknn/datagen.hpp"
#include "stiknn/errors.hpp"
#include "stiknn/sti_knn.hpp"

namespace stiknn {

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw InputError("slope fit needs >= 2 points");
    const double count = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

namespace {

double time_sti_knn(const Dataset& train, const Dataset& test, const KnnConfig& cfg, int threads,
                    int reps) {
    using clock = std::chrono::steady_clock;
    volatile double sink = 0.0;

    auto run_once = [&] {
        const auto t0 = clock::now();
        const InteractionMatrix m = sti_knn(train, test, cfg, threads);
        const auto t1 = clock::now();
        sink = sink + m.values.at(0, m.values.n() - 1);
        return std::chrono::duration<double>(t1 - t0).count();
    };

    // Warmup sizes the batch so each measurement spans at least ~10 ms.
    const double estimate = run_once();
    const int batch = std::max(1, static_cast<int>(std::ceil(0.01 / std::max(estimate, 1e-9))));

    double best = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < reps; ++rep) {
        const auto t0 = clock::now();
        for (int i = 0; i < batch; ++i) {
            const InteractionMatrix m = sti_knn(train, test, cfg, threads);
            sink = sink + m.values.at(0, 0);
        }
        const auto t1 = clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count() / batch);
    }
    return best;
}

}  // namespace

BenchResult run_scaling_bench(const BenchOptions& options) {
    BenchResult result;
    const KnnConfig cfg{options.k, Metric::Euclidean};

    auto measure = [&](char sweep, int n, int t) {
        const Dataset train = make_circles(n / 2, 0.5, 0.1, options.seed);
        const Dataset test =
            make_circles(t / 2, 0.5, 0.1, options.seed + 1).with_role(DatasetRole::Test);
        const double seconds =
            time_sti_knn(train, test, cfg, options.threads, options.reps);
        result.rows.push_back({sweep, train.size(), test.size(), options.k, seconds});
        return seconds;
    };

    std::vector<double> ns, n_times;
    for (int n : options.n_values) {
        ns.push_back(n);
        n_times.push_back(measure('n', n, options.fixed_t));
    }
    std::vector<double> ts, t_times;
    for (int t : options.t_values) {
        ts.push_back(t);
        t_times.push_back(measure('t', options.fixed_n, t));
    }

    result.slope_vs_n = loglog_slope(ns, n_times);
    result.slope_vs_t = loglog_slope(ts, t_times);
    return result;
}

}  // namespace stiknn
