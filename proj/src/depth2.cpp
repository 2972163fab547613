#include "odt/depth2.hpp"

#include <algorithm>

namespace odt {

namespace {

Score max_of(const Score* c, std::size_t k) { return *std::max_element(c, c + k); }

Score max_of_difference(const Score* total, const Score* c, std::size_t k) {
    Score m = total[0] - c[0];
    for (std::size_t y = 1; y < k; ++y) m = std::max(m, total[y] - c[y]);
    return m;
}

}  // namespace

D2Result D2Workspace::run(const SubsetView& view, std::size_t f1, double tau, const D2Observer& observer) {
    const Dataset& data = view.data();
    const std::size_t k = data.num_labels();
    const std::size_t p = data.num_features();
    if (goes_left_.size() < data.size()) goes_left_.assign(data.size(), 0);
    counts_.assign(4 * k, 0);
    Score* fq_left = counts_.data();
    Score* fq_right = fq_left + k;
    Score* c_left = fq_right + k;
    Score* c_right = c_left + k;

    auto col1 = data.column(f1);
    Score n_left = 0, n_right = 0;
    for (InstanceId i : view.members()) {
        const auto y = static_cast<std::size_t>(data.label(i));
        if (col1[i] <= tau) {
            goes_left_[static_cast<std::size_t>(i)] = 1;
            ++fq_left[y];
            ++n_left;
        } else {
            ++fq_right[y];
            ++n_right;
        }
    }

    D2Result result;
    // A bare leaf per side is the depth-zero option.
    result.left.score = n_left - (n_left > 0 ? max_of(fq_left, k) : 0);
    result.right.score = n_right - (n_right > 0 ? max_of(fq_right, k) : 0);

    for (std::size_t f2 = 0; f2 < p && result.left.score + result.right.score > 0; ++f2) {
        std::fill(c_left, c_left + 2 * k, Score{0});
        Score seen_left = 0, seen_right = 0;
        double prev_left = 0.0, prev_right = 0.0;
        auto col2 = data.column(f2);
        for (InstanceId i : view.order(f2)) {
            const double v = col2[i];
            const auto y = static_cast<std::size_t>(data.label(i));
            const bool left = goes_left_[static_cast<std::size_t>(i)] != 0;
            if (observer)
                observer(D2SweepState{f2, i, left, {c_left, k}, {fq_left, k}, {c_right, k}, {fq_right, k}});
            ++result.visits;
            if (left) {
                // Only a change of value within this side is a real threshold.
                if (seen_left > 0 && v > prev_left) {
                    const Score below = seen_left - max_of(c_left, k);
                    const Score above = (n_left - seen_left) - max_of_difference(fq_left, c_left, k);
                    if (below + above < result.left.score) {
                        result.left.score = below + above;
                        result.left.feature = f2;
                        result.left.threshold = (prev_left + v) / 2.0;
                    }
                }
                ++c_left[y];
                ++seen_left;
                prev_left = v;
            } else {
                if (seen_right > 0 && v > prev_right) {
                    const Score below = seen_right - max_of(c_right, k);
                    const Score above = (n_right - seen_right) - max_of_difference(fq_right, c_right, k);
                    if (below + above < result.right.score) {
                        result.right.score = below + above;
                        result.right.feature = f2;
                        result.right.threshold = (prev_right + v) / 2.0;
                    }
                }
                ++c_right[y];
                ++seen_right;
                prev_right = v;
            }
            if (result.left.score + result.right.score == 0) break;
        }
    }

    for (InstanceId i : view.members()) goes_left_[static_cast<std::size_t>(i)] = 0;
    return result;
}

D2Result d2_split(const SubsetView& view, std::size_t f1, double tau, const D2Observer& observer) {
    D2Workspace ws;
    return ws.run(view, f1, tau, observer);
}

D2Result d2_split(const SubsetView& view, const SplitCandidates& cands, int w) {
    return d2_split(view, cands.feature(), cands.threshold(w));
}

}  // namespace odt
