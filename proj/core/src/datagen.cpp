#include "stiknn/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stiknn/errors.hpp"

namespace stiknn {

uint64_t Rng::next_u64() {
    // splitmix64 (Steele, Lea, Flood 2014).
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::pair<double, double> Rng::normal_pair() {
    // Box-Muller; u1 drawn from (0, 1] to keep the log finite.
    const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

int Rng::uniform_int(int bound) {
    if (bound <= 0) throw InputError("uniform_int bound must be positive");
    const uint64_t b = static_cast<uint64_t>(bound);
    const uint64_t limit = UINT64_MAX - UINT64_MAX % b;
    uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return static_cast<int>(x % b);
}

uint64_t Rng::mix(uint64_t seed, uint64_t stream) {
    Rng r(seed ^ (0x2545f4914f6cdd1dull * (stream + 1)));
    return r.next_u64();
}

namespace {

Dataset two_class_2d(const std::vector<double>& features, int n_per_class) {
    std::vector<std::string> labels(static_cast<size_t>(n_per_class) * 2);
    for (int i = 0; i < n_per_class; ++i) labels[i] = "0";
    for (int i = 0; i < n_per_class; ++i) labels[n_per_class + i] = "1";
    return Dataset(2, features, labels);
}

}  // namespace

Dataset make_circles(int n_per_class, double factor, double noise_std, uint64_t seed) {
    if (n_per_class < 1) throw InputError("n_per_class must be at least 1");
    if (!(factor > 0.0 && factor < 1.0)) throw InputError("factor must lie in (0, 1)");
    if (noise_std < 0.0) throw InputError("noise_std must be non-negative");

    Rng rng(seed);
    std::vector<double> features;
    features.reserve(static_cast<size_t>(n_per_class) * 4);
    for (double radius : {1.0, factor}) {
        for (int m = 0; m < n_per_class; ++m) {
            const double theta = 2.0 * std::numbers::pi * m / n_per_class;
            const auto [nx, ny] = rng.normal_pair();
            features.push_back(radius * std::cos(theta) + noise_std * nx);
            features.push_back(radius * std::sin(theta) + noise_std * ny);
        }
    }
    return two_class_2d(features, n_per_class);
}

Dataset make_moons(int n_per_class, double noise_std, uint64_t seed) {
    if (n_per_class < 1) throw InputError("n_per_class must be at least 1");
    if (noise_std < 0.0) throw InputError("noise_std must be non-negative");

    Rng rng(seed);
    std::vector<double> features;
    features.reserve(static_cast<size_t>(n_per_class) * 4);
    auto angle_at = [&](int m) {
        return n_per_class == 1 ? 0.0 : std::numbers::pi * m / (n_per_class - 1);
    };
    for (int m = 0; m < n_per_class; ++m) {
        const double theta = angle_at(m);
        const auto [nx, ny] = rng.normal_pair();
        features.push_back(std::cos(theta) + noise_std * nx);
        features.push_back(std::sin(theta) + noise_std * ny);
    }
    for (int m = 0; m < n_per_class; ++m) {
        const double theta = angle_at(m);
        const auto [nx, ny] = rng.normal_pair();
        features.push_back(1.0 - std::cos(theta) + noise_std * nx);
        features.push_back(0.5 - std::sin(theta) + noise_std * ny);
    }
    return two_class_2d(features, n_per_class);
}

namespace {

// First `count` entries of a seeded partial Fisher-Yates over 0..n-1.
std::vector<int> choose_distinct(int n, int count, Rng& rng) {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (int i = 0; i < count; ++i) {
        const int j = i + rng.uniform_int(n - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    return pool;
}

}  // namespace

NoisyLabels inject_label_noise(const Dataset& dataset, double fraction, uint64_t seed) {
    if (!(fraction >= 0.0 && fraction <= 1.0)) throw InputError("fraction must lie in [0, 1]");
    const int classes = dataset.num_classes();
    if (classes < 2) throw InputError("label noise requires at least two classes");

    const int n = dataset.size();
    const int flips = static_cast<int>(fraction * n);

    Rng rng(seed);
    std::vector<int> flipped = choose_distinct(n, flips, rng);
    std::sort(flipped.begin(), flipped.end());

    std::vector<int> ids = dataset.labels();
    for (int idx : flipped) {
        const int offset = rng.uniform_int(classes - 1);
        ids[idx] = offset >= ids[idx] ? offset + 1 : offset;
    }
    std::vector<double> features(dataset.point(0).data(),
                                 dataset.point(0).data() + static_cast<size_t>(n) * dataset.dim());
    Dataset noisy(dataset.dim(), std::move(features), std::move(ids),
                  dataset.label_names(), dataset.role());
    return {std::move(noisy), std::move(flipped)};
}

namespace {

Dataset keep_rows(const Dataset& dataset, const std::vector<uint8_t>& keep) {
    std::vector<double> features;
    std::vector<std::string> labels;
    for (int i = 0; i < dataset.size(); ++i) {
        if (!keep[i]) continue;
        const auto row = dataset.point(i);
        features.insert(features.end(), row.begin(), row.end());
        labels.push_back(dataset.label_of(i));
    }
    return Dataset(dataset.dim(), std::move(features), labels, dataset.role());
}

}  // namespace

Dataset subsample_class(const Dataset& dataset, int class_id, double keep_fraction,
                        uint64_t seed) {
    if (!(keep_fraction >= 0.0 && keep_fraction <= 1.0))
        throw InputError("keep_fraction must lie in [0, 1]");
    std::vector<int> positions;
    for (int i = 0; i < dataset.size(); ++i)
        if (dataset.label(i) == class_id) positions.push_back(i);
    if (class_id < 0 || class_id >= dataset.num_classes() || positions.empty())
        throw InputError("unknown class id " + std::to_string(class_id));

    const int keep_count = static_cast<int>(
        std::llround(keep_fraction * static_cast<double>(positions.size())));
    Rng rng(seed);
    const std::vector<int> chosen =
        choose_distinct(static_cast<int>(positions.size()), keep_count, rng);

    std::vector<uint8_t> keep(dataset.size(), 1);
    for (int pos : positions) keep[pos] = 0;
    for (int c : chosen) keep[positions[c]] = 1;
    return keep_rows(dataset, keep);
}

TrainTestSplit split_train_test(const Dataset& dataset, double train_fraction, uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw InputError("train_fraction must lie in (0, 1)");
    const int n = dataset.size();
    if (n < 2) throw InputError("splitting requires at least two points");

    Rng rng(seed);
    std::vector<int> order = choose_distinct(n, n, rng);  // full shuffle
    int train_count = static_cast<int>(std::llround(train_fraction * n));
    train_count = std::clamp(train_count, 1, n - 1);

    auto take = [&](int lo, int hi, DatasetRole role) {
        std::vector<double> features;
        std::vector<std::string> labels;
        for (int r = lo; r < hi; ++r) {
            const auto row = dataset.point(order[r]);
            features.insert(features.end(), row.begin(), row.end());
            labels.push_back(dataset.label_of(order[r]));
        }
        return Dataset(dataset.dim(), std::move(features), labels, role);
    };
    return {take(0, train_count, DatasetRole::Train), take(train_count, n, DatasetRole::Test)};
}

}  // namespace stiknn
