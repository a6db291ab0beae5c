#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace stiknn {

// Result of interning label tokens: dense ids 0..c-1 in first-appearance order.
struct LabelInterning {
    std::vector<std::string> names;  // id -> token
    std::vector<int> ids;            // one id per input position
};

LabelInterning intern_labels(const std::vector<std::string>& raw_labels);

enum class DatasetRole { Train, Test };

// An ordered collection of labeled points. The point index is stable: index i
// here is the row/column identity in every interaction matrix computed from
// this dataset. Immutable after construction; safe to share across threads.
class Dataset {
public:
    // Rows of `dim` finite features each, one label token per row.
    Dataset(int dim, std::vector<double> features, const std::vector<std::string>& labels,
            DatasetRole role = DatasetRole::Train);

    // Pre-interned form. `label_ids` must index into `label_names`.
    Dataset(int dim, std::vector<double> features, std::vector<int> label_ids,
            std::vector<std::string> label_names, DatasetRole role = DatasetRole::Train);

    static Dataset from_rows(const std::vector<std::vector<double>>& rows,
                             const std::vector<std::string>& labels,
                             DatasetRole role = DatasetRole::Train);

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(label_ids_.size()); }
    DatasetRole role() const { return role_; }

    std::span<const double> point(int i) const {
        return {features_.data() + static_cast<size_t>(i) * dim_, static_cast<size_t>(dim_)};
    }
    double feature(int i, int d) const { return features_[static_cast<size_t>(i) * dim_ + d]; }

    int label(int i) const { return label_ids_[i]; }
    const std::vector<int>& labels() const { return label_ids_; }
    const std::string& label_name(int id) const { return label_names_[id]; }
    const std::string& label_of(int i) const { return label_names_[label_ids_[i]]; }
    const std::vector<std::string>& label_names() const { return label_names_; }
    int num_classes() const { return static_cast<int>(label_names_.size()); }

    Dataset with_role(DatasetRole role) const;

    // Content hash (features, labels, dim); recorded in InteractionMatrix meta.
    uint64_t fingerprint() const;

    // Same points, same per-point label tokens, same order. Interned ids may
    // differ between the two operands.
    bool same_content(const Dataset& other) const;

private:
    int dim_ = 0;
    DatasetRole role_ = DatasetRole::Train;
    std::vector<double> features_;  // row-major, size() * dim()
    std::vector<int> label_ids_;
    std::vector<std::string> label_names_;

    void validate() const;
};

}  // namespace stiknn
