#include "odt/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace odt {

namespace {

void snap_column(std::span<double> column, double epsilon) {
    std::vector<std::size_t> idx(column.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return column[a] < column[b]; });
    double representative = 0.0;
    bool open = false;
    for (std::size_t i : idx) {
        if (!open || column[i] - representative > epsilon) {
            representative = column[i];
            open = true;
        } else {
            column[i] = representative;
        }
    }
}

}  // namespace

Dataset::Dataset(std::vector<double> column_major_values, std::size_t num_features, std::vector<Label> labels,
                 std::vector<std::string> label_names, std::vector<std::string> feature_names, double epsilon)
    : values_(std::move(column_major_values)),
      num_features_(num_features),
      labels_(std::move(labels)),
      label_names_(std::move(label_names)),
      feature_names_(std::move(feature_names)),
      epsilon_(epsilon) {
    if (labels_.empty()) throw DataError("dataset must contain at least one observation");
    if (num_features_ == 0) throw DataError("dataset must contain at least one feature");
    if (values_.size() != labels_.size() * num_features_)
        throw DataError("value array size does not match n * p");
    if (!(epsilon_ >= 0.0)) throw DataError("epsilon must be non-negative");
    for (double v : values_)
        if (!std::isfinite(v)) throw DataError("feature values must be finite");

    Label max_label = -1;
    for (Label y : labels_) {
        if (y < 0) throw DataError("labels must be non-negative integers");
        max_label = std::max(max_label, y);
    }
    num_labels_ = static_cast<std::size_t>(max_label) + 1;
    if (!label_names_.empty() && label_names_.size() < num_labels_)
        throw DataError("label name table is smaller than the label range");
    if (!label_names_.empty()) num_labels_ = label_names_.size();
    if (!feature_names_.empty() && feature_names_.size() != num_features_)
        throw DataError("feature name count does not match feature count");

    if (epsilon_ > 0.0) {
        for (std::size_t f = 0; f < num_features_; ++f)
            snap_column(std::span<double>(values_.data() + f * size(), size()), epsilon_);
    }
}

Dataset Dataset::from_rows(const std::vector<std::vector<double>>& rows, const std::vector<Label>& labels,
                           double epsilon) {
    if (rows.empty()) throw DataError("dataset must contain at least one observation");
    const std::size_t p = rows.front().size();
    std::vector<double> values(rows.size() * p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != p) throw DataError("row " + std::to_string(i) + " has inconsistent arity");
        for (std::size_t f = 0; f < p; ++f) values[f * rows.size() + i] = rows[i][f];
    }
    return Dataset(std::move(values), p, labels, {}, {}, epsilon);
}

std::string Dataset::label_name(Label y) const {
    if (!label_names_.empty() && y >= 0 && static_cast<std::size_t>(y) < label_names_.size())
        return label_names_[static_cast<std::size_t>(y)];
    return std::to_string(y);
}

Score LabelHistogram::total() const { return std::accumulate(counts.begin(), counts.end(), Score{0}); }

Score LabelHistogram::misclassifications() const {
    if (counts.empty()) return 0;
    return total() - *std::max_element(counts.begin(), counts.end());
}

Label LabelHistogram::majority() const {
    // max_element returns the first maximum, i.e. the lowest label id.
    return static_cast<Label>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

SubsetView SubsetView::full(const Dataset& data) {
    std::vector<InstanceId> members(data.size());
    std::iota(members.begin(), members.end(), InstanceId{0});
    return of(data, std::move(members));
}

SubsetView SubsetView::of(const Dataset& data, std::vector<InstanceId> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (InstanceId i : members)
        if (i < 0 || static_cast<std::size_t>(i) >= data.size()) throw DataError("instance id out of range");
    std::vector<std::vector<InstanceId>> orders(data.num_features());
    for (std::size_t f = 0; f < data.num_features(); ++f) {
        auto col = data.column(f);
        orders[f] = members;
        // members is ascending, so a stable sort breaks value ties by instance id.
        std::stable_sort(orders[f].begin(), orders[f].end(),
                         [&](InstanceId a, InstanceId b) { return col[a] < col[b]; });
    }
    return SubsetView(&data, std::move(members), std::move(orders));
}

LabelHistogram SubsetView::histogram() const {
    LabelHistogram h(data_->num_labels());
    for (InstanceId i : members_) ++h.counts[static_cast<std::size_t>(data_->label(i))];
    return h;
}

std::vector<double> compute_unique_values(const SubsetView& view, std::size_t f, double epsilon) {
    std::vector<double> unique;
    auto col = view.data().column(f);
    for (InstanceId i : view.order(f)) {
        const double v = col[i];
        if (unique.empty() || v - unique.back() > epsilon) unique.push_back(v);
    }
    return unique;
}

SplitCandidates compute_thresholds(const SubsetView& view, std::size_t f, std::vector<double> unique_values) {
    std::vector<double> thresholds;
    if (unique_values.size() > 1) {
        thresholds.reserve(unique_values.size() - 1);
        for (std::size_t k = 0; k + 1 < unique_values.size(); ++k)
            thresholds.push_back((unique_values[k] + unique_values[k + 1]) / 2.0);
    }
    std::vector<Score> z(thresholds.size() + 1, 0);
    auto col = view.data().column(f);
    auto order = view.order(f);
    std::size_t pos = 0;
    for (std::size_t k = 0; k < thresholds.size(); ++k) {
        while (pos < order.size() && col[order[pos]] <= thresholds[k]) ++pos;
        z[k + 1] = static_cast<Score>(pos);
    }
    return SplitCandidates(f, std::move(unique_values), std::move(thresholds), std::move(z));
}

SplitCandidates split_candidates(const SubsetView& view, std::size_t f) {
    return compute_thresholds(view, f, compute_unique_values(view, f, 0.0));
}

std::pair<SubsetView, SubsetView> split_view(const SubsetView& view, std::size_t f, double tau) {
    const Dataset& data = view.data();
    auto col = data.column(f);
    const std::size_t p = data.num_features();

    std::vector<InstanceId> left_members, right_members;
    for (InstanceId i : view.members_) (col[i] <= tau ? left_members : right_members).push_back(i);

    std::vector<std::vector<InstanceId>> left_orders(p), right_orders(p);
    for (std::size_t g = 0; g < p; ++g) {
        auto& lo = left_orders[g];
        auto& ro = right_orders[g];
        lo.reserve(left_members.size());
        ro.reserve(right_members.size());
        for (InstanceId i : view.orders_[g]) (col[i] <= tau ? lo : ro).push_back(i);
    }
    return {SubsetView(&data, std::move(left_members), std::move(left_orders)),
            SubsetView(&data, std::move(right_members), std::move(right_orders))};
}

LeafScore leaf_score(const SubsetView& view) {
    if (view.empty()) throw DataError("leaf_score of an empty view");
    LabelHistogram h = view.histogram();
    return {h.misclassifications(), h.majority()};
}

}  // namespace odt
