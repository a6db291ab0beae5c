// stiknn: exact pair-interaction Shapley values for KNN models.
//
// Subcommands: compute, oracle, verify, ksweep, loo, gen, fetch, bench.
// Exit codes: 0 success, 1 verification failure, 2 usage or precondition
// error, 3 I/O or network error.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "stiknn/stiknn.hpp"

namespace {

using namespace stiknn;

std::string fmt(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

struct ComputeOptions {
    std::string train_path;
    std::string test_path;
    std::string out_path;
    std::string heatmap_path;
    std::string order = "original";
    std::string metric = "euclidean";
    int k = 5;
    int threads = 1;
};

int run_compute(const ComputeOptions& opt) {
    const Dataset train = read_dataset_csv(opt.train_path);
    const Dataset test = read_dataset_csv(opt.test_path, DatasetRole::Test);
    const KnnConfig cfg{opt.k, metric_from_string(opt.metric)};

    const auto t0 = std::chrono::steady_clock::now();
    const InteractionMatrix matrix = sti_knn(train, test, cfg, opt.threads);
    const auto t1 = std::chrono::steady_clock::now();
    const double elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    const EfficiencyReport report = efficiency_report(matrix, train, test, cfg);

    SquareMatrix view = matrix.values;
    if (opt.order == "display") view = reorder(matrix.values, display_order(train));
    write_matrix_csv(view, opt.out_path);
    if (!opt.heatmap_path.empty()) write_heatmap_ppm(view, opt.heatmap_path);

    std::cout << "n=" << train.size() << " t=" << test.size() << " k=" << cfg.k
              << " metric=" << to_string(cfg.metric) << " order=" << opt.order << '\n';
    std::cout << "pair_sum=" << fmt(report.pair_sum) << '\n';
    std::cout << "v_N=" << fmt(report.v_of_n) << '\n';
    std::cout << "residual=" << fmt(report.residual) << '\n';
    std::cout << "mean=" << fmt(report.mean) << '\n';
    std::cout << "time_ms=" << fmt(elapsed_ms) << '\n';
    return 0;
}

struct OracleOptions {
    std::string train_path;
    std::string test_path;
    std::string out_path;
    std::string metric = "euclidean";
    int k = 5;
    int cap = 15;
};

int run_oracle(const OracleOptions& opt) {
    if (opt.cap < 2 || opt.cap > kOracleHardCap)
        throw InputError("cap must lie in [2, " + std::to_string(kOracleHardCap) + "]");
    const Dataset train = read_dataset_csv(opt.train_path);
    const Dataset test = read_dataset_csv(opt.test_path, DatasetRole::Test);
    if (train.size() > opt.cap)
        throw InputError("training size " + std::to_string(train.size()) +
                         " exceeds the requested cap " + std::to_string(opt.cap));
    const KnnConfig cfg{opt.k, metric_from_string(opt.metric)};

    const InteractionMatrix matrix = sti_exact_matrix(train, test, cfg);
    write_matrix_csv(matrix.values, opt.out_path);

    const EfficiencyReport report = efficiency_report(matrix, train, test, cfg);
    std::cout << "n=" << train.size() << " t=" << test.size() << " k=" << cfg.k << '\n';
    std::cout << "pair_sum=" << fmt(report.pair_sum) << '\n';
    std::cout << "v_N=" << fmt(report.v_of_n) << '\n';
    std::cout << "residual=" << fmt(report.residual) << '\n';
    return 0;
}

struct VerifyCliOptions {
    int n_max = 10;
    int trials = 50;
    uint64_t seed = 42;
    int threads = 1;
    double fault_offset = 0.0;
};

int run_verify(const VerifyCliOptions& opt) {
    constexpr double kTolerance = 1e-10;
    VerifyOptions options;
    options.n_max = opt.n_max;
    options.trials = opt.trials;
    options.seed = opt.seed;
    options.threads = opt.threads;
    options.fault_offset = opt.fault_offset;

    const auto t0 = std::chrono::steady_clock::now();
    const VerifyReport report = run_oracle_equivalence(options);
    const auto t1 = std::chrono::steady_clock::now();

    std::cout << "instances=" << report.instances << '\n';
    std::cout << "max_abs_diff=" << fmt(report.max_abs_diff) << '\n';
    std::cout << "worst_case: " << report.worst_description() << '\n';
    std::cout << "max_efficiency_residual=" << fmt(report.max_efficiency_residual) << '\n';
    std::cout << "time_s=" << fmt(std::chrono::duration<double>(t1 - t0).count()) << '\n';

    if (report.max_abs_diff <= kTolerance) {
        std::cout << "verify: PASS (tolerance " << kTolerance << ")\n";
        return 0;
    }
    std::cout << "verify: FAIL (tolerance " << kTolerance << ")\n";
    return 1;
}

struct KsweepOptions {
    std::string train_path;
    std::string test_path;
    std::string out_path;
    std::string metric = "euclidean";
    int k_min = 3;
    int k_max = 20;
    int threads = 1;
};

int run_ksweep(const KsweepOptions& opt) {
    if (opt.k_min < 1 || opt.k_max < opt.k_min) throw InputError("invalid k range");
    const Dataset train = read_dataset_csv(opt.train_path);
    const Dataset test = read_dataset_csv(opt.test_path, DatasetRole::Test);

    std::vector<int> k_values(opt.k_max - opt.k_min + 1);
    std::iota(k_values.begin(), k_values.end(), opt.k_min);
    const KSweepResult sweep =
        k_sweep(train, test, k_values, metric_from_string(opt.metric), opt.threads);

    if (!opt.out_path.empty()) {
        std::ofstream out(opt.out_path);
        if (!out) throw IoError(opt.out_path + ": cannot open for writing");
        out << "k";
        for (int k : k_values) out << ",r_k" << k;
        out << ",std\n";
        for (size_t a = 0; a < k_values.size(); ++a) {
            out << k_values[a];
            for (size_t b = 0; b < k_values.size(); ++b)
                out << ',' << fmt(sweep.correlations.at(static_cast<int>(a), static_cast<int>(b)));
            out << ',' << fmt(sweep.stds[a]) << '\n';
        }
    }

    double min_corr = 1.0;
    for (size_t a = 0; a < k_values.size(); ++a)
        for (size_t b = a + 1; b < k_values.size(); ++b)
            min_corr = std::min(min_corr,
                                sweep.correlations.at(static_cast<int>(a), static_cast<int>(b)));
    bool decreasing = true;
    for (size_t a = 1; a < sweep.stds.size(); ++a)
        if (!(sweep.stds[a] < sweep.stds[a - 1])) decreasing = false;

    std::cout << "k_range=" << opt.k_min << ".." << opt.k_max << '\n';
    std::cout << "min_pairwise_correlation=" << fmt(min_corr) << '\n';
    std::cout << "std_strictly_decreasing=" << (decreasing ? "yes" : "no") << '\n';
    return 0;
}

struct LooOptions {
    std::string train_path;
    std::string test_path;
    std::string out_path;
    std::string metric = "euclidean";
    int k = 5;
};

int run_loo(const LooOptions& opt) {
    const Dataset train = read_dataset_csv(opt.train_path);
    const Dataset test = read_dataset_csv(opt.test_path, DatasetRole::Test);
    const std::vector<double> values =
        loo_values(train, test, {opt.k, metric_from_string(opt.metric)});

    std::ofstream out(opt.out_path);
    if (!out) throw IoError(opt.out_path + ": cannot open for writing");
    out << "index,label,loo\n";
    for (int i = 0; i < train.size(); ++i)
        out << i << ',' << train.label_of(i) << ',' << fmt(values[i]) << '\n';

    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    std::cout << "n=" << train.size() << " t=" << test.size() << " k=" << opt.k << '\n';
    std::cout << "loo_min=" << fmt(*lo) << " loo_max=" << fmt(*hi) << '\n';
    return 0;
}

struct GenOptions {
    std::string kind = "circles";
    std::string out_path;
    std::string flips_out;
    int n_per_class = 300;
    double factor = 0.5;
    double noise = 0.1;
    uint64_t seed = 1;
    std::string subsample_label;
    double keep_fraction = 1.0;
    uint64_t subsample_seed = 1;
    double mislabel_fraction = 0.0;
    uint64_t mislabel_seed = 1;
};

int run_gen(const GenOptions& opt) {
    Dataset dataset = opt.kind == "circles"
                          ? make_circles(opt.n_per_class, opt.factor, opt.noise, opt.seed)
                          : make_moons(opt.n_per_class, opt.noise, opt.seed);

    if (!opt.subsample_label.empty()) {
        int class_id = -1;
        for (int c = 0; c < dataset.num_classes(); ++c)
            if (dataset.label_name(c) == opt.subsample_label) class_id = c;
        if (class_id < 0) throw InputError("unknown class label: " + opt.subsample_label);
        dataset = subsample_class(dataset, class_id, opt.keep_fraction, opt.subsample_seed);
    }

    std::vector<int> flipped;
    if (opt.mislabel_fraction > 0.0) {
        NoisyLabels noisy = inject_label_noise(dataset, opt.mislabel_fraction, opt.mislabel_seed);
        dataset = std::move(noisy.dataset);
        flipped = std::move(noisy.flipped);
    }

    write_dataset_csv(dataset, opt.out_path);
    if (!opt.flips_out.empty()) {
        std::ofstream out(opt.flips_out);
        if (!out) throw IoError(opt.flips_out + ": cannot open for writing");
        for (int idx : flipped) out << idx << '\n';
    }
    std::cout << "kind=" << opt.kind << " n=" << dataset.size()
              << " classes=" << dataset.num_classes() << " flipped=" << flipped.size() << '\n';
    return 0;
}

struct FetchOptions {
    int dataset_id = 0;
    std::string cache_dir;
    std::string base_url = "https://www.openml.org";
    std::string out_path;
};

int run_fetch(const FetchOptions& opt) {
    OpenmlOptions options;
    options.base_url = opt.base_url;
    options.cache_dir = opt.cache_dir.empty() ? default_cache_dir() : opt.cache_dir;

    const Dataset dataset = fetch_openml(opt.dataset_id, options);
    if (!opt.out_path.empty()) write_dataset_csv(dataset, opt.out_path);

    std::cout << "id=" << opt.dataset_id << " n=" << dataset.size() << " dim=" << dataset.dim()
              << " classes=" << dataset.num_classes() << '\n';
    std::cout << "cache=" << options.cache_dir << "/openml/" << opt.dataset_id << "/data.csv\n";
    return 0;
}

struct BenchCliOptions {
    std::string out_path;
    int k = 5;
    int reps = 5;
    int threads = 1;
    int fixed_t = 50;
    int fixed_n = 500;
};

int run_bench(const BenchCliOptions& opt) {
    BenchOptions options;
    options.k = opt.k;
    options.reps = opt.reps;
    options.threads = opt.threads;
    options.fixed_t = opt.fixed_t;
    options.fixed_n = opt.fixed_n;

    const BenchResult result = run_scaling_bench(options);

    if (!opt.out_path.empty()) {
        std::ofstream out(opt.out_path);
        if (!out) throw IoError(opt.out_path + ": cannot open for writing");
        out << "sweep,n,t,k,seconds\n";
        for (const BenchRow& row : result.rows)
            out << row.sweep << ',' << row.n << ',' << row.t << ',' << row.k << ','
                << fmt(row.seconds) << '\n';
    }
    for (const BenchRow& row : result.rows)
        std::cout << "sweep=" << row.sweep << " n=" << row.n << " t=" << row.t
                  << " seconds=" << fmt(row.seconds) << '\n';
    std::cout << "slope_n=" << fmt(result.slope_vs_n) << '\n';
    std::cout << "slope_t=" << fmt(result.slope_vs_t) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact pair-interaction Shapley values for KNN models"};
    app.require_subcommand(1);
    int exit_code = 0;

    ComputeOptions compute;
    CLI::App* compute_cmd =
        app.add_subcommand("compute", "Compute the interaction matrix in O(t*n^2)");
    compute_cmd->add_option("--train", compute.train_path, "Training CSV")->required();
    compute_cmd->add_option("--test", compute.test_path, "Test CSV")->required();
    compute_cmd->add_option("--k", compute.k, "KNN parameter")->required();
    compute_cmd->add_option("--out", compute.out_path, "Output matrix CSV")->required();
    compute_cmd->add_option("--heatmap", compute.heatmap_path, "Optional PPM heatmap");
    compute_cmd->add_option("--order", compute.order, "Row/column order")
        ->check(CLI::IsMember({"original", "display"}));
    compute_cmd->add_option("--metric", compute.metric, "Distance metric")
        ->check(CLI::IsMember({"euclidean", "manhattan"}));
    compute_cmd->add_option("--threads", compute.threads, "Worker cap");
    compute_cmd->callback([&] { exit_code = run_compute(compute); });

    OracleOptions oracle;
    CLI::App* oracle_cmd =
        app.add_subcommand("oracle", "Brute-force matrix from the O(2^n) definition");
    oracle_cmd->add_option("--train", oracle.train_path, "Training CSV")->required();
    oracle_cmd->add_option("--test", oracle.test_path, "Test CSV")->required();
    oracle_cmd->add_option("--k", oracle.k, "KNN parameter")->required();
    oracle_cmd->add_option("--out", oracle.out_path, "Output matrix CSV")->required();
    oracle_cmd->add_option("--cap", oracle.cap, "Refuse training sets larger than this");
    oracle_cmd->add_option("--metric", oracle.metric, "Distance metric")
        ->check(CLI::IsMember({"euclidean", "manhattan"}));
    oracle_cmd->callback([&] { exit_code = run_oracle(oracle); });

    VerifyCliOptions verify;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "Sweep sti_knn against the brute-force matrix");
    verify_cmd->add_option("--n-max", verify.n_max, "Largest training size");
    verify_cmd->add_option("--trials", verify.trials, "Instances per (n, k, t) cell");
    verify_cmd->add_option("--seed", verify.seed, "Sweep seed");
    verify_cmd->add_option("--threads", verify.threads, "Worker cap");
    verify_cmd->add_option("--inject-fault", verify.fault_offset,
                           "Test hook: perturb each matrix before comparison")
        ->group("");  // hidden
    verify_cmd->callback([&] { exit_code = run_verify(verify); });

    KsweepOptions ksweep;
    CLI::App* ksweep_cmd =
        app.add_subcommand("ksweep", "Pairwise matrix correlations across a k range");
    ksweep_cmd->add_option("--train", ksweep.train_path, "Training CSV")->required();
    ksweep_cmd->add_option("--test", ksweep.test_path, "Test CSV")->required();
    ksweep_cmd->add_option("--k-min", ksweep.k_min, "Smallest k");
    ksweep_cmd->add_option("--k-max", ksweep.k_max, "Largest k");
    ksweep_cmd->add_option("--out", ksweep.out_path, "Correlation table CSV");
    ksweep_cmd->add_option("--metric", ksweep.metric, "Distance metric")
        ->check(CLI::IsMember({"euclidean", "manhattan"}));
    ksweep_cmd->add_option("--threads", ksweep.threads, "Worker cap");
    ksweep_cmd->callback([&] { exit_code = run_ksweep(ksweep); });

    LooOptions loo;
    CLI::App* loo_cmd = app.add_subcommand("loo", "Leave-one-out baseline values");
    loo_cmd->add_option("--train", loo.train_path, "Training CSV")->required();
    loo_cmd->add_option("--test", loo.test_path, "Test CSV")->required();
    loo_cmd->add_option("--k", loo.k, "KNN parameter")->required();
    loo_cmd->add_option("--out", loo.out_path, "Output CSV")->required();
    loo_cmd->add_option("--metric", loo.metric, "Distance metric")
        ->check(CLI::IsMember({"euclidean", "manhattan"}));
    loo_cmd->callback([&] { exit_code = run_loo(loo); });

    GenOptions gen;
    CLI::App* gen_cmd = app.add_subcommand("gen", "Generate synthetic datasets");
    gen_cmd->add_option("--kind", gen.kind, "Dataset family")
        ->check(CLI::IsMember({"circles", "moons"}));
    gen_cmd->add_option("--n", gen.n_per_class, "Points per class");
    gen_cmd->add_option("--factor", gen.factor, "Inner circle radius (circles only)");
    gen_cmd->add_option("--noise", gen.noise, "Gaussian noise std");
    gen_cmd->add_option("--seed", gen.seed, "Generator seed");
    gen_cmd->add_option("--out", gen.out_path, "Output CSV")->required();
    gen_cmd->add_option("--subsample-class", gen.subsample_label,
                        "Label token of the class to thin");
    gen_cmd->add_option("--keep-fraction", gen.keep_fraction, "Fraction of that class to keep");
    gen_cmd->add_option("--subsample-seed", gen.subsample_seed, "Subsample seed");
    gen_cmd->add_option("--mislabel-fraction", gen.mislabel_fraction,
                        "Fraction of labels to flip");
    gen_cmd->add_option("--mislabel-seed", gen.mislabel_seed, "Mislabel seed");
    gen_cmd->add_option("--flips-out", gen.flips_out, "Write flipped indices here");
    gen_cmd->callback([&] { exit_code = run_gen(gen); });

    FetchOptions fetch;
    CLI::App* fetch_cmd = app.add_subcommand("fetch", "Download an OpenML dataset (cached)");
    fetch_cmd->add_option("--id", fetch.dataset_id, "OpenML dataset id")->required();
    fetch_cmd->add_option("--cache-dir", fetch.cache_dir,
                          "Cache directory (default: STI_CACHE_DIR or ~/.cache/stiknn)");
    fetch_cmd->add_option("--base-url", fetch.base_url, "API base URL (mirrors/testing)");
    fetch_cmd->add_option("--out", fetch.out_path, "Also write the dataset CSV here");
    fetch_cmd->callback([&] { exit_code = run_fetch(fetch); });

    BenchCliOptions bench;
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "Time sti_knn across n and t, fit log-log slopes");
    bench_cmd->add_option("--out", bench.out_path, "Timing CSV");
    bench_cmd->add_option("--k", bench.k, "KNN parameter");
    bench_cmd->add_option("--reps", bench.reps, "Repetitions per point");
    bench_cmd->add_option("--threads", bench.threads, "Worker cap");
    bench_cmd->add_option("--t-fixed", bench.fixed_t, "Test size for the n sweep");
    bench_cmd->add_option("--n-fixed", bench.fixed_n, "Training size for the t sweep");
    bench_cmd->callback([&] { exit_code = run_bench(bench); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return exit_code;
}
