#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace odt {

using Score = std::int64_t;
using InstanceId = std::int32_t;
using Label = std::int32_t;

// Default tolerance for treating two feature values as equal.
inline constexpr double kDefaultEpsilon = 1e-7;

class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Immutable table of continuous observations with dense integer labels.
///
/// Values are stored column-major. When constructed with a positive epsilon,
/// each feature is snapped to run representatives: values are scanned in
/// ascending order and every value within epsilon of the first value of its
/// run is replaced by that first value. After snapping, all downstream code
/// compares feature values exactly.
class Dataset {
public:
    Dataset(std::vector<double> column_major_values, std::size_t num_features,
            std::vector<Label> labels, std::vector<std::string> label_names = {},
            std::vector<std::string> feature_names = {}, double epsilon = kDefaultEpsilon);

    /// Convenience constructor from rows (row[f] is feature f).
    static Dataset from_rows(const std::vector<std::vector<double>>& rows,
                             const std::vector<Label>& labels,
                             double epsilon = kDefaultEpsilon);

    std::size_t size() const { return labels_.size(); }
    std::size_t num_features() const { return num_features_; }
    std::size_t num_labels() const { return num_labels_; }
    double epsilon() const { return epsilon_; }

    double value(InstanceId i, std::size_t f) const { return values_[f * size() + static_cast<std::size_t>(i)]; }
    std::span<const double> column(std::size_t f) const { return {values_.data() + f * size(), size()}; }
    Label label(InstanceId i) const { return labels_[static_cast<std::size_t>(i)]; }
    std::span<const Label> labels() const { return labels_; }

    // Empty when labels were supplied as integers.
    const std::vector<std::string>& label_names() const { return label_names_; }
    const std::vector<std::string>& feature_names() const { return feature_names_; }

    // Name of label id as written to output (the original token, or the id).
    std::string label_name(Label y) const;

private:
    std::vector<double> values_;
    std::size_t num_features_;
    std::vector<Label> labels_;
    std::size_t num_labels_ = 0;
    std::vector<std::string> label_names_;
    std::vector<std::string> feature_names_;
    double epsilon_;
};

/// Per-label instance counts of a (sub)dataset.
struct LabelHistogram {
    std::vector<Score> counts;

    explicit LabelHistogram(std::size_t num_labels = 0) : counts(num_labels, 0) {}

    Score total() const;
    // Misclassifications of the best constant prediction.
    Score misclassifications() const;
    // Majority label, lowest id on ties.
    Label majority() const;
};

/// A subset of a dataset with one sorted instance ordering per feature.
///
/// Orderings are ascending in the feature value with ties broken by instance
/// id. Splitting filters every ordering, so sortedness is inherited and the
/// dataset only has to be sorted once.
class SubsetView {
public:
    static SubsetView full(const Dataset& data);

    // Builds a view over an explicit instance set.
    static SubsetView of(const Dataset& data, std::vector<InstanceId> members);

    const Dataset& data() const { return *data_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }

    // Instance ids in ascending id order.
    std::span<const InstanceId> members() const { return members_; }
    // Instance ids ascending by the value of feature f.
    std::span<const InstanceId> order(std::size_t f) const { return orders_[f]; }

    LabelHistogram histogram() const;

private:
    SubsetView(const Dataset* data, std::vector<InstanceId> members, std::vector<std::vector<InstanceId>> orders)
        : data_(data), members_(std::move(members)), orders_(std::move(orders)) {}

    friend std::pair<SubsetView, SubsetView> split_view(const SubsetView&, std::size_t, double);

    const Dataset* data_;
    std::vector<InstanceId> members_;
    std::vector<std::vector<InstanceId>> orders_;
};

/// Candidate thresholds of one feature on one view.
///
/// Threshold indices are 1-based: thresholds()[k-1] is the k-th threshold and
/// z(k) is the number of view instances with value <= that threshold. z(0) = 0.
class SplitCandidates {
public:
    SplitCandidates() = default;
    SplitCandidates(std::size_t feature, std::vector<double> unique_values, std::vector<double> thresholds,
                    std::vector<Score> z)
        : feature_(feature), unique_(std::move(unique_values)), thresholds_(std::move(thresholds)), z_(std::move(z)) {}

    std::size_t feature() const { return feature_; }
    const std::vector<double>& unique_values() const { return unique_; }
    const std::vector<double>& thresholds() const { return thresholds_; }
    int m() const { return static_cast<int>(thresholds_.size()); }

    double threshold(int k) const { return thresholds_[static_cast<std::size_t>(k - 1)]; }
    Score z(int k) const { return z_[static_cast<std::size_t>(k)]; }
    // Position of threshold k's left unique value in unique_values() (1-based).
    int u(int k) const { return k; }

    // Strictly increasing z over 0..m.
    std::span<const Score> z_map() const { return z_; }

private:
    std::size_t feature_ = 0;
    std::vector<double> unique_;
    std::vector<double> thresholds_;
    std::vector<Score> z_;
};

/// Ascending run representatives of feature f on the view. A new run starts
/// when a value exceeds the current run's first value by more than epsilon.
std::vector<double> compute_unique_values(const SubsetView& view, std::size_t f, double epsilon);

/// Midpoint thresholds between consecutive unique values, with z populated
/// by counting view instances at or below each threshold.
SplitCandidates compute_thresholds(const SubsetView& view, std::size_t f, std::vector<double> unique_values);

/// Unique values and thresholds of feature f in one call (exact comparisons).
SplitCandidates split_candidates(const SubsetView& view, std::size_t f);

/// Partition into (x_f <= tau, x_f > tau), preserving every ordering.
std::pair<SubsetView, SubsetView> split_view(const SubsetView& view, std::size_t f, double tau);

struct LeafScore {
    Score score;
    Label label;
};

LeafScore leaf_score(const SubsetView& view);

}  // namespace odt
