#include "stiknn/valuation.hpp"

#include <algorithm>
#include <numeric>

#include "stiknn/errors.hpp"

namespace stiknn {

NeighborRanking rank_neighbors(const Dataset& train, std::span<const double> query,
                               Metric metric) {
    const int n = train.size();
    if (static_cast<int>(query.size()) != train.dim())
        throw InputError("query dimensionality does not match the training set");

    NeighborRanking ranking;
    ranking.order.resize(n);
    ranking.distance.resize(n);
    ranking.rank_of.resize(n);

    std::vector<double> dist(n);
    for (int i = 0; i < n; ++i) dist[i] = point_distance(train.point(i), query, metric);

    std::iota(ranking.order.begin(), ranking.order.end(), 0);
    std::sort(ranking.order.begin(), ranking.order.end(), [&](int a, int b) {
        if (dist[a] != dist[b]) return dist[a] < dist[b];
        return a < b;  // stable tie-break: ascending original index
    });

    for (int r = 0; r < n; ++r) {
        ranking.distance[r] = dist[ranking.order[r]];
        ranking.rank_of[ranking.order[r]] = r;
    }
    return ranking;
}

std::vector<int> align_labels(const Dataset& train, const Dataset& test) {
    std::vector<int> train_id_of_test_id(test.num_classes(), -1);
    for (int c = 0; c < test.num_classes(); ++c) {
        for (int tc = 0; tc < train.num_classes(); ++tc) {
            if (train.label_name(tc) == test.label_name(c)) {
                train_id_of_test_id[c] = tc;
                break;
            }
        }
    }
    std::vector<int> aligned(test.size());
    for (int p = 0; p < test.size(); ++p) aligned[p] = train_id_of_test_id[test.label(p)];
    return aligned;
}

double u_single(int train_label, int test_label, int k) {
    if (k < 1) throw InputError("k must be positive");
    return train_label == test_label ? 1.0 / k : 0.0;
}

double u_subset(const std::vector<int>& subset, const NeighborRanking& ranking,
                const std::vector<int>& train_labels, int test_label, int k) {
    if (k < 1) throw InputError("k must be positive");
    const int n = static_cast<int>(train_labels.size());
    if (subset.empty()) return 0.0;

    std::vector<uint8_t> member(n, 0);
    int distinct = 0;
    for (int idx : subset) {
        if (idx < 0 || idx >= n) throw InputError("subset index out of range");
        if (!member[idx]) {
            member[idx] = 1;
            ++distinct;
        }
    }

    const int votes = std::min(k, distinct);
    int matches = 0;
    int taken = 0;
    for (int r = 0; r < n && taken < votes; ++r) {
        const int orig = ranking.order[r];
        if (!member[orig]) continue;
        ++taken;
        if (train_labels[orig] == test_label) ++matches;
    }
    return static_cast<double>(matches) / k;
}

double v_score(const std::vector<int>& subset, const Dataset& train, const Dataset& test,
               const KnnConfig& cfg) {
    const int t = test.size();
    const std::vector<int> test_labels = align_labels(train, test);
    double sum = 0.0;
    for (int p = 0; p < t; ++p) {
        const NeighborRanking ranking = rank_neighbors(train, test.point(p), cfg.metric);
        sum += u_subset(subset, ranking, train.labels(), test_labels[p], cfg.k);
    }
    return sum / t;
}

std::vector<double> loo_values(const Dataset& train, const Dataset& test, const KnnConfig& cfg) {
    const int n = train.size();
    const int t = test.size();
    const int k = cfg.k;
    if (n < 2) throw InputError("leave-one-out requires at least two training points");
    if (k < 1) throw InputError("k must be positive");

    std::vector<double> values(n, 0.0);
    const std::vector<int> test_labels = align_labels(train, test);
    for (int p = 0; p < t; ++p) {
        const NeighborRanking ranking = rank_neighbors(train, test.point(p), cfg.metric);
        const int test_label = test_labels[p];
        auto match_at_rank = [&](int r) {
            return train.label(ranking.order[r]) == test_label ? 1 : 0;
        };
        if (n > k) {
            // Removing a point outside the top k leaves the vote unchanged;
            // removing rank p < k promotes rank k into the vote.
            const int promoted = match_at_rank(k);
            for (int r = 0; r < k; ++r)
                values[ranking.order[r]] += static_cast<double>(match_at_rank(r) - promoted) / k;
        } else {
            // Every member votes; removing i simply removes its own count.
            for (int r = 0; r < n; ++r)
                values[ranking.order[r]] += static_cast<double>(match_at_rank(r)) / k;
        }
    }
    for (double& v : values) v /= t;
    return values;
}

}  // namespace stiknn
