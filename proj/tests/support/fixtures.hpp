#pragma once

// Shared test fixtures and independent reference implementations. The
// reference valuations here recompute everything from first principles
// (own distance code, own sorting) so they can stand as oracles for the
// library paths they check.

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <string>
#include <vector>

#include "stiknn/dataset.hpp"
#include "stiknn/knn.hpp"
#include "stiknn/matrix.hpp"

namespace testsupport {

struct Instance {
    stiknn::Dataset train;
    stiknn::Dataset test;
};

// Train points on a line at x = 1, 2, ..., n with one test point at the
// origin, so rank order equals index order and `match_flags[r]` is the label
// match of the point at rank r.
inline Instance ranked_flags_fixture(const std::vector<int>& match_flags) {
    std::vector<double> train_features;
    std::vector<std::string> train_labels;
    for (size_t r = 0; r < match_flags.size(); ++r) {
        train_features.push_back(static_cast<double>(r + 1));
        train_labels.push_back(match_flags[r] ? "pos" : "neg");
    }
    stiknn::Dataset train(1, std::move(train_features), train_labels);
    stiknn::Dataset test(1, {0.0}, {"pos"}, stiknn::DatasetRole::Test);
    return {std::move(train), std::move(test)};
}

inline double max_abs_diff(const stiknn::SquareMatrix& a, const stiknn::SquareMatrix& b) {
    double worst = 0.0;
    for (size_t c = 0; c < a.flat().size(); ++c)
        worst = std::max(worst, std::abs(a.flat()[c] - b.flat()[c]));
    return worst;
}

// Reference KNN likelihood computed from scratch: long-double distances,
// stable sort, explicit vote count. Independent of stiknn::rank_neighbors
// and stiknn::u_subset.
inline double reference_u(const std::vector<int>& subset, const stiknn::Dataset& train,
                          const stiknn::Dataset& test, int test_index, int k) {
    std::vector<std::pair<long double, int>> by_distance;
    for (int idx : subset) {
        long double acc = 0.0L;
        for (int d = 0; d < train.dim(); ++d) {
            const long double diff = static_cast<long double>(train.feature(idx, d)) -
                                     static_cast<long double>(test.feature(test_index, d));
            acc += diff * diff;
        }
        by_distance.emplace_back(acc, idx);
    }
    std::stable_sort(by_distance.begin(), by_distance.end());
    const int votes = std::min<size_t>(k, by_distance.size());
    int matches = 0;
    for (int v = 0; v < votes; ++v) {
        const int idx = by_distance[v].second;
        if (train.label_of(idx) == test.label_of(test_index)) ++matches;
    }
    return static_cast<double>(matches) / k;
}

inline double reference_v(const std::vector<int>& subset, const stiknn::Dataset& train,
                          const stiknn::Dataset& test, int k) {
    double sum = 0.0;
    for (int p = 0; p < test.size(); ++p) sum += reference_u(subset, train, test, p, k);
    return sum / test.size();
}

inline std::vector<int> all_indices(int n) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    return idx;
}

// Scratch directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("stiknn_test_" + tag + "_" + std::to_string(++counter) + "_" +
                 std::to_string(static_cast<unsigned>(::getpid())));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return (path_ / name).string(); }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace testsupport
