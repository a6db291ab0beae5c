#include "stiknn/dataset.hpp"

#include <cmath>
#include <cstring>
#include <unordered_map>
#include <utility>

#include "stiknn/errors.hpp"

namespace stiknn {

LabelInterning intern_labels(const std::vector<std::string>& raw_labels) {
    LabelInterning out;
    out.ids.reserve(raw_labels.size());
    std::unordered_map<std::string, int> seen;
    for (const auto& token : raw_labels) {
        auto [it, inserted] = seen.emplace(token, static_cast<int>(out.names.size()));
        if (inserted) out.names.push_back(token);
        out.ids.push_back(it->second);
    }
    return out;
}

Dataset::Dataset(int dim, std::vector<double> features, const std::vector<std::string>& labels,
                 DatasetRole role)
    : dim_(dim), role_(role), features_(std::move(features)) {
    LabelInterning interned = intern_labels(labels);
    label_ids_ = std::move(interned.ids);
    label_names_ = std::move(interned.names);
    validate();
}

Dataset::Dataset(int dim, std::vector<double> features, std::vector<int> label_ids,
                 std::vector<std::string> label_names, DatasetRole role)
    : dim_(dim),
      role_(role),
      features_(std::move(features)),
      label_ids_(std::move(label_ids)),
      label_names_(std::move(label_names)) {
    for (int id : label_ids_) {
        if (id < 0 || id >= static_cast<int>(label_names_.size()))
            throw InputError("label id out of range");
    }
    validate();
}

Dataset Dataset::from_rows(const std::vector<std::vector<double>>& rows,
                           const std::vector<std::string>& labels, DatasetRole role) {
    if (rows.empty()) throw InputError("dataset must contain at least one point");
    if (rows.size() != labels.size()) throw InputError("row/label count mismatch");
    const int dim = static_cast<int>(rows.front().size());
    std::vector<double> flat;
    flat.reserve(rows.size() * static_cast<size_t>(dim));
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != dim)
            throw InputError("all points must share the same dimensionality");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return Dataset(dim, std::move(flat), labels, role);
}

void Dataset::validate() const {
    if (dim_ < 1) throw InputError("dataset dimensionality must be positive");
    if (label_ids_.empty()) throw InputError("dataset must contain at least one point");
    if (features_.size() != label_ids_.size() * static_cast<size_t>(dim_))
        throw InputError("feature buffer size does not match size * dim");
    for (double v : features_) {
        if (!std::isfinite(v)) throw InputError("dataset features must be finite");
    }
}

Dataset Dataset::with_role(DatasetRole role) const {
    Dataset copy = *this;
    copy.role_ = role;
    return copy;
}

namespace {

constexpr uint64_t kFnvOffset = 1469598103934665603ull;
constexpr uint64_t kFnvPrime = 1099511628211ull;

void fnv_bytes(uint64_t& h, const void* data, size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= kFnvPrime;
    }
}

}  // namespace

uint64_t Dataset::fingerprint() const {
    uint64_t h = kFnvOffset;
    const int n = size();
    fnv_bytes(h, &dim_, sizeof dim_);
    fnv_bytes(h, &n, sizeof n);
    fnv_bytes(h, features_.data(), features_.size() * sizeof(double));
    for (int i = 0; i < n; ++i) {
        const std::string& name = label_of(i);
        fnv_bytes(h, name.data(), name.size());
        const char sep = '\n';
        fnv_bytes(h, &sep, 1);
    }
    return h;
}

bool Dataset::same_content(const Dataset& other) const {
    if (dim_ != other.dim_ || size() != other.size()) return false;
    if (features_.size() != other.features_.size()) return false;
    if (std::memcmp(features_.data(), other.features_.data(),
                    features_.size() * sizeof(double)) != 0)
        return false;
    for (int i = 0; i < size(); ++i) {
        if (label_of(i) != other.label_of(i)) return false;
    }
    return true;
}

}  // namespace stiknn
