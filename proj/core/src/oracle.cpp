#include "stiknn/oracle.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "stiknn/errors.hpp"
#include "stiknn/sti_knn.hpp"
#include "stiknn/valuation.hpp"

namespace stiknn {

uint64_t binomial(int n, int r) {
    if (n < 0 || r < 0 || r > n) return 0;
    if (n > 62) throw InputError("binomial table limited to n <= 62");
    // Pascal rows fit uint64 up to n = 62.
    static const auto rows = [] {
        std::vector<std::vector<uint64_t>> p(63);
        for (int i = 0; i <= 62; ++i) {
            p[i].resize(i + 1, 1);
            for (int j = 1; j < i; ++j) p[i][j] = p[i - 1][j - 1] + p[i - 1][j];
        }
        return p;
    }();
    return rows[n][r];
}

double discrete_delta(const std::vector<int>& s, int i, int j,
                      const std::function<double(const std::vector<int>&)>& valuation) {
    if (i == j) throw InputError("discrete_delta requires distinct i and j");
    for (int idx : s) {
        if (idx == i || idx == j) throw InputError("subset must not contain i or j");
    }
    std::vector<int> with_i = s;
    with_i.push_back(i);
    std::vector<int> with_j = s;
    with_j.push_back(j);
    std::vector<int> with_both = with_i;
    with_both.push_back(j);
    return valuation(with_both) - valuation(with_i) - valuation(with_j) + valuation(s);
}

namespace {

struct TestView {
    std::vector<int> order;            // rank -> original train index
    std::vector<uint8_t> match_by_rank;
};

std::vector<TestView> build_test_views(const Dataset& train, const Dataset& test, Metric metric) {
    const std::vector<int> test_labels = align_labels(train, test);
    std::vector<TestView> views(test.size());
    for (int p = 0; p < test.size(); ++p) {
        const NeighborRanking ranking = rank_neighbors(train, test.point(p), metric);
        views[p].order = ranking.order;
        views[p].match_by_rank.resize(train.size());
        for (int r = 0; r < train.size(); ++r)
            views[p].match_by_rank[r] =
                train.label(ranking.order[r]) == test_labels[p] ? 1 : 0;
    }
    return views;
}

double u_of_mask(uint32_t mask, const TestView& view, int k) {
    const int votes = std::min(k, std::popcount(mask));
    if (votes == 0) return 0.0;
    int matches = 0;
    int taken = 0;
    for (int r = 0; taken < votes; ++r) {
        if (!(mask >> view.order[r] & 1u)) continue;
        ++taken;
        matches += view.match_by_rank[r];
    }
    return static_cast<double>(matches) / k;
}

void require_oracle_preconditions(const Dataset& train, int k, int i, int j) {
    const int n = train.size();
    if (n > kOracleHardCap)
        throw InputError("training size " + std::to_string(n) +
                         " exceeds the brute-force cap " + std::to_string(kOracleHardCap));
    if (n < 2) throw InputError("pair interactions require at least two training points");
    if (k < 1) throw InputError("k must be positive");
    if (k > n) throw InputError("k exceeds training size");
    if (i == j || i < 0 || j < 0 || i >= n || j >= n)
        throw InputError("pair indices must be distinct and in range");
}

// Full definition-level sum for one pair: subsets of N \ {i, j} enumerated as
// bitmasks in ascending numeric order, weighted by 1 / C(n-1, |S|), averaged
// over test points. `min_size` of k-1 gives the restricted-sum variant.
double exact_pair_sum(const Dataset& train, const std::vector<TestView>& views, int k, int i,
                      int j, int min_size) {
    const int n = train.size();
    std::vector<int> free_indices;
    free_indices.reserve(n - 2);
    for (int idx = 0; idx < n; ++idx)
        if (idx != i && idx != j) free_indices.push_back(idx);

    std::vector<double> weight(n - 1, 0.0);
    for (int s = 0; s <= n - 2; ++s) weight[s] = 1.0 / static_cast<double>(binomial(n - 1, s));

    const uint32_t bit_i = 1u << i;
    const uint32_t bit_j = 1u << j;
    const uint32_t subset_count = 1u << (n - 2);

    double total = 0.0;
    for (const TestView& view : views) {
        double acc = 0.0;
        for (uint32_t m = 0; m < subset_count; ++m) {
            const int size = std::popcount(m);
            if (size < min_size) continue;
            uint32_t mask = 0;
            for (int b = 0; b < n - 2; ++b)
                if (m >> b & 1u) mask |= 1u << free_indices[b];
            const double delta = u_of_mask(mask | bit_i | bit_j, view, k) -
                                 u_of_mask(mask | bit_i, view, k) -
                                 u_of_mask(mask | bit_j, view, k) + u_of_mask(mask, view, k);
            acc += delta * weight[size];
        }
        total += acc;
    }
    return (2.0 / n) * (total / static_cast<double>(views.size()));
}

}  // namespace

double sti_exact_pair(const Dataset& train, const Dataset& test, const KnnConfig& cfg, int i,
                      int j) {
    require_oracle_preconditions(train, cfg.k, i, j);
    const auto views = build_test_views(train, test, cfg.metric);
    return exact_pair_sum(train, views, cfg.k, i, j, 0);
}

double sti_exact_pair_restricted(const Dataset& train, const Dataset& test, const KnnConfig& cfg,
                                 int i, int j) {
    require_oracle_preconditions(train, cfg.k, i, j);
    const auto views = build_test_views(train, test, cfg.metric);
    return exact_pair_sum(train, views, cfg.k, i, j, cfg.k - 1);
}

InteractionMatrix sti_exact_matrix(const Dataset& train, const Dataset& test,
                                   const KnnConfig& cfg) {
    require_oracle_preconditions(train, cfg.k, 0, 1);
    const int n = train.size();
    const auto views = build_test_views(train, test, cfg.metric);

    SquareMatrix m(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double value = exact_pair_sum(train, views, cfg.k, i, j, 0);
            m.at(i, j) = value;
            m.at(j, i) = value;
        }
    }
    const std::vector<double> diag = main_terms(train, test, cfg.k);
    for (int i = 0; i < n; ++i) m.at(i, i) = diag[i];

    InteractionMatrix out;
    out.values = std::move(m);
    out.meta = {cfg.k, test.size(), train.fingerprint(), test.fingerprint()};
    return out;
}

}  // namespace stiknn
