#include "stiknn/sti_knn.hpp"

#include <algorithm>
#include <thread>

#include "stiknn/errors.hpp"

namespace stiknn {

namespace {

void require_sti_preconditions(int n, int k) {
    if (n < 2) throw InputError("pair interactions require at least two training points");
    if (k < 1) throw InputError("k must be positive");
    if (k > n) throw InputError("k exceeds training size");
}

// Shared value of every pair whose later-ranked member sits at 0-based rank q,
// for q in [1, n-1]. col_value[0] is unused. This is the superdiagonal of the
// ranked-coordinate matrix, carried from the farthest pair inward.
void superdiag_values(const std::vector<uint8_t>& match_by_rank, int k,
                      std::vector<double>& col_value) {
    const int n = static_cast<int>(match_by_rank.size());
    auto u_at = [&](int rank) { return static_cast<double>(match_by_rank[rank]) / k; };

    col_value[n - 1] = last_pair_term(n, k, u_at(n - 1));
    for (int j = n; j >= 3; --j)
        col_value[j - 2] = superdiag_step(col_value[j - 1], j, k, u_at(j - 1), u_at(j - 2));
}

// Accumulates one test point's matrix into the upper triangle of `acc`.
// Cell (a, b) receives the column value of whichever endpoint ranks later.
void accumulate_one_test(SquareMatrix& acc, const Dataset& train, std::span<const double> query,
                         int test_label, const KnnConfig& cfg, std::vector<double>& col_value) {
    const int n = train.size();
    const NeighborRanking ranking = rank_neighbors(train, query, cfg.metric);

    std::vector<uint8_t> match_by_rank(n);
    for (int r = 0; r < n; ++r)
        match_by_rank[r] = train.label(ranking.order[r]) == test_label ? 1 : 0;
    superdiag_values(match_by_rank, cfg.k, col_value);

    const int* rank_of = ranking.rank_of.data();
    for (int a = 0; a < n; ++a) {
        const int rank_a = rank_of[a];
        double* row = acc.row(a);
        for (int b = a + 1; b < n; ++b) row[b] += col_value[std::max(rank_a, rank_of[b])];
    }
}

}  // namespace

double last_pair_term(int n, int k, double u_last) {
    require_sti_preconditions(n, k);
    return -(2.0 * (n - k)) / (static_cast<double>(n) * (n - 1)) * u_last;
}

double superdiag_step(double phi_next, int j, int k, double u_j, double u_jm1) {
    if (j <= k + 1) return phi_next;
    return phi_next + (2.0 * (j - k - 1)) / (static_cast<double>(j - 2) * (j - 1)) * (u_j - u_jm1);
}

SingleTestMatrix sti_knn_one_test(const NeighborRanking& ranking,
                                  const std::vector<int>& train_labels, int test_label, int k) {
    const int n = static_cast<int>(train_labels.size());
    require_sti_preconditions(n, k);
    if (static_cast<int>(ranking.order.size()) != n)
        throw InputError("ranking size does not match the label vector");

    std::vector<uint8_t> match_by_rank(n);
    for (int r = 0; r < n; ++r)
        match_by_rank[r] = train_labels[ranking.order[r]] == test_label ? 1 : 0;

    std::vector<double> col_value(n, 0.0);
    superdiag_values(match_by_rank, k, col_value);

    SingleTestMatrix m(n);
    for (int a = 0; a < n; ++a) {
        const int rank_a = ranking.rank_of[a];
        for (int b = a + 1; b < n; ++b) {
            const double value = col_value[std::max(rank_a, ranking.rank_of[b])];
            m.at(a, b) = value;
            m.at(b, a) = value;
        }
    }
    return m;
}

std::vector<double> main_terms(const Dataset& train, const Dataset& test, int k) {
    if (k < 1) throw InputError("k must be positive");
    std::vector<int> test_count_by_class(train.num_classes(), 0);
    for (int id : align_labels(train, test)) {
        if (id >= 0) ++test_count_by_class[id];
    }
    const double denom = static_cast<double>(test.size()) * k;
    std::vector<double> terms(train.size());
    for (int i = 0; i < train.size(); ++i)
        terms[i] = static_cast<double>(test_count_by_class[train.label(i)]) / denom;
    return terms;
}

InteractionMatrix sti_knn(const Dataset& train, const Dataset& test, const KnnConfig& cfg,
                          int threads) {
    const int n = train.size();
    const int t = test.size();
    require_sti_preconditions(n, cfg.k);
    if (train.dim() != test.dim()) throw InputError("train/test dimensionality mismatch");
    if (threads < 1) threads = 1;

    const std::vector<int> test_label_as_train_id = align_labels(train, test);

    // Fixed-size blocks accumulated in ascending order make the summation
    // order independent of the worker count, so results are bit-identical at
    // any `threads` value.
    constexpr int kTestsPerBlock = 32;
    const int blocks = (t + kTestsPerBlock - 1) / kTestsPerBlock;
    const int workers = std::min(threads, blocks);

    auto fill_block = [&](int block, SquareMatrix& buf) {
        std::fill(buf.flat().begin(), buf.flat().end(), 0.0);
        std::vector<double> col_value(n, 0.0);
        const int lo = block * kTestsPerBlock;
        const int hi = std::min(t, lo + kTestsPerBlock);
        for (int p = lo; p < hi; ++p)
            accumulate_one_test(buf, train, test.point(p), test_label_as_train_id[p], cfg,
                                col_value);
    };

    SquareMatrix acc(n);
    std::vector<SquareMatrix> partial(workers, SquareMatrix(n));
    for (int wave = 0; wave < blocks; wave += workers) {
        const int count = std::min(workers, blocks - wave);
        if (count == 1) {
            fill_block(wave, partial[0]);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(count);
            for (int s = 0; s < count; ++s)
                pool.emplace_back([&, s] { fill_block(wave + s, partial[s]); });
            for (auto& th : pool) th.join();
        }
        for (int s = 0; s < count; ++s) {
            const auto src = partial[s].flat();
            auto dst = acc.flat();
            for (size_t c = 0; c < dst.size(); ++c) dst[c] += src[c];
        }
    }

    for (double& v : acc.flat()) v /= t;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) acc.at(b, a) = acc.at(a, b);

    const std::vector<double> diag = main_terms(train, test, cfg.k);
    for (int i = 0; i < n; ++i) acc.at(i, i) = diag[i];

    InteractionMatrix out;
    out.values = std::move(acc);
    out.meta = {cfg.k, t, train.fingerprint(), test.fingerprint()};
    return out;
}

}  // namespace stiknn
