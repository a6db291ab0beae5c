#include "stiknn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stiknn/errors.hpp"
#include "stiknn/sti_knn.hpp"
#include "stiknn/valuation.hpp"

namespace stiknn {

EfficiencyReport efficiency_report(const InteractionMatrix& matrix, const Dataset& train,
                                   const Dataset& test, const KnnConfig& cfg) {
    const int n = matrix.values.n();
    if (n != train.size()) throw InputError("matrix shape does not match the training set");
    if (matrix.meta.train_fingerprint != 0 &&
        matrix.meta.train_fingerprint != train.fingerprint())
        throw InputError("matrix was not produced from this training set");

    EfficiencyReport report;
    double diag_sum = 0.0;
    double upper_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        diag_sum += matrix.values.at(i, i);
        for (int j = i + 1; j < n; ++j) upper_sum += matrix.values.at(i, j);
    }
    for (double v : matrix.values.flat()) report.full_sum += v;
    report.pair_sum = diag_sum + upper_sum;
    report.mean = report.full_sum / (static_cast<double>(n) * n);

    std::vector<int> everyone(n);
    std::iota(everyone.begin(), everyone.end(), 0);
    report.v_of_n = v_score(everyone, train, test, cfg);
    report.residual = report.pair_sum - report.v_of_n;
    return report;
}

double pearson(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.n() != b.n()) throw InputError("pearson requires matrices of equal shape");
    const auto xs = a.flat();
    const auto ys = b.flat();
    const double count = static_cast<double>(xs.size());

    double mean_x = 0.0;
    double mean_y = 0.0;
    for (size_t c = 0; c < xs.size(); ++c) {
        mean_x += xs[c];
        mean_y += ys[c];
    }
    mean_x /= count;
    mean_y /= count;

    double cov = 0.0;
    double var_x = 0.0;
    double var_y = 0.0;
    for (size_t c = 0; c < xs.size(); ++c) {
        const double dx = xs[c] - mean_x;
        const double dy = ys[c] - mean_y;
        cov += dx * dy;
        var_x += dx * dx;
        var_y += dy * dy;
    }
    if (var_x == 0.0 || var_y == 0.0)
        throw InputError("undefined correlation: an input has zero variance");
    return std::clamp(cov / std::sqrt(var_x * var_y), -1.0, 1.0);
}

namespace {

double population_std(const SquareMatrix& m) {
    const auto xs = m.flat();
    const double count = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double v : xs) mean += v;
    mean /= count;
    double var = 0.0;
    for (double v : xs) var += (v - mean) * (v - mean);
    return std::sqrt(var / count);
}

}  // namespace

KSweepResult k_sweep(const Dataset& train, const Dataset& test, const std::vector<int>& k_values,
                     Metric metric, int threads) {
    if (k_values.empty()) throw InputError("k_sweep needs at least one k");
    KSweepResult result;
    result.k_values = k_values;

    std::vector<SquareMatrix> matrices;
    matrices.reserve(k_values.size());
    for (int k : k_values) {
        InteractionMatrix m = sti_knn(train, test, {k, metric}, threads);
        result.stds.push_back(population_std(m.values));
        matrices.push_back(std::move(m.values));
    }

    const int count = static_cast<int>(k_values.size());
    result.correlations = SquareMatrix(count);
    for (int a = 0; a < count; ++a) {
        result.correlations.at(a, a) = 1.0;
        for (int b = a + 1; b < count; ++b) {
            const double r = pearson(matrices[a], matrices[b]);
            result.correlations.at(a, b) = r;
            result.correlations.at(b, a) = r;
        }
    }
    return result;
}

ClassBlockSummary class_block_summary(const SquareMatrix& matrix,
                                      const std::vector<int>& labels) {
    const int n = matrix.n();
    if (static_cast<int>(labels.size()) != n)
        throw InputError("label vector does not match the matrix shape");
    int classes = 0;
    for (int label : labels) classes = std::max(classes, label + 1);

    ClassBlockSummary summary;
    summary.classes = classes;
    summary.mean = SquareMatrix(classes);
    summary.mean_abs = SquareMatrix(classes);
    SquareMatrix counts(classes);

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double v = matrix.at(i, j);
            summary.mean.at(labels[i], labels[j]) += v;
            summary.mean_abs.at(labels[i], labels[j]) += std::abs(v);
            counts.at(labels[i], labels[j]) += 1.0;
        }
    }
    for (int a = 0; a < classes; ++a) {
        for (int b = 0; b < classes; ++b) {
            const double c = counts.at(a, b);
            if (c > 0.0) {
                summary.mean.at(a, b) /= c;
                summary.mean_abs.at(a, b) /= c;
            }
        }
    }
    return summary;
}

namespace {

double cosine(const double* a, const double* b, int n) {
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (int c = 0; c < n; ++c) {
        dot += a[c] * b[c];
        na += a[c] * a[c];
        nb += b[c] * b[c];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / std::sqrt(na * nb);
}

}  // namespace

std::vector<std::optional<double>> mislabel_scores(const SquareMatrix& matrix,
                                                   const std::vector<int>& labels) {
    const int n = matrix.n();
    if (static_cast<int>(labels.size()) != n)
        throw InputError("label vector does not match the matrix shape");
    int classes = 0;
    for (int label : labels) classes = std::max(classes, label + 1);
    if (classes < 2) throw InputError("mislabel scoring requires at least two classes");

    // Rows are compared by their off-diagonal interaction pattern: the
    // diagonal main term is a per-class constant well above the pair values
    // and would swamp the cosine geometry.
    SquareMatrix rows = matrix;
    for (int i = 0; i < n; ++i) rows.at(i, i) = 0.0;

    std::vector<int> class_count(classes, 0);
    std::vector<std::vector<double>> centroid(classes, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        ++class_count[labels[i]];
        const double* row = rows.row(i);
        for (int c = 0; c < n; ++c) centroid[labels[i]][c] += row[c];
    }
    for (int a = 0; a < classes; ++a) {
        if (class_count[a] == 0) continue;
        for (double& v : centroid[a]) v /= class_count[a];
    }

    std::vector<std::optional<double>> scores(n);
    std::vector<double> own(n);
    for (int i = 0; i < n; ++i) {
        const int y = labels[i];
        if (class_count[y] < 2) {
            scores[i] = std::nullopt;  // own-class centroid excluding self is undefined
            continue;
        }
        const double* row = rows.row(i);
        const double members = static_cast<double>(class_count[y]);
        for (int c = 0; c < n; ++c) own[c] = (centroid[y][c] * members - row[c]) / (members - 1.0);

        double best_other = -2.0;
        for (int a = 0; a < classes; ++a) {
            if (a == y || class_count[a] == 0) continue;
            best_other = std::max(best_other, cosine(row, centroid[a].data(), n));
        }
        scores[i] = cosine(row, own.data(), n) - best_other;
    }
    return scores;
}

std::vector<int> display_order(const Dataset& dataset) {
    std::vector<int> perm(dataset.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
        if (dataset.label(a) != dataset.label(b)) return dataset.label(a) < dataset.label(b);
        for (int d = 0; d < dataset.dim(); ++d) {
            if (dataset.feature(a, d) != dataset.feature(b, d))
                return dataset.feature(a, d) < dataset.feature(b, d);
        }
        return a < b;
    });
    return perm;
}

Dataset reorder(const Dataset& dataset, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != dataset.size())
        throw InputError("permutation size mismatch");
    std::vector<double> features;
    features.reserve(static_cast<size_t>(dataset.size()) * dataset.dim());
    std::vector<std::string> labels;
    labels.reserve(dataset.size());
    for (int idx : perm) {
        const auto row = dataset.point(idx);
        features.insert(features.end(), row.begin(), row.end());
        labels.push_back(dataset.label_of(idx));
    }
    return Dataset(dataset.dim(), std::move(features), labels, dataset.role());
}

}  // namespace stiknn
