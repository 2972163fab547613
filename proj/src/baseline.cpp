#include "odt/baseline.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace odt {

namespace {

struct OneLevel {
    Score score;
    Tree tree;
};

// Depth-one optimum by scanning every threshold with running label counts.
OneLevel best_stump(const SubsetView& view) {
    const Dataset& data = view.data();
    const std::size_t k = data.num_labels();
    const LabelHistogram total = view.histogram();
    OneLevel best{total.misclassifications(), Tree::leaf(total.majority())};
    for (std::size_t f = 0; f < data.num_features(); ++f) {
        const SplitCandidates c = split_candidates(view, f);
        auto order = view.order(f);
        LabelHistogram left(k);
        std::size_t pos = 0;
        for (int t = 1; t <= c.m(); ++t) {
            for (; pos < static_cast<std::size_t>(c.z(t)); ++pos)
                ++left.counts[static_cast<std::size_t>(data.label(order[pos]))];
            LabelHistogram right(k);
            for (std::size_t y = 0; y < k; ++y) right.counts[y] = total.counts[y] - left.counts[y];
            const Score s = left.misclassifications() + right.misclassifications();
            if (s < best.score) {
                best.score = s;
                best.tree = Tree::branch(static_cast<int>(f), c.threshold(t), Tree::leaf(left.majority()),
                                         Tree::leaf(right.majority()));
            }
        }
    }
    return best;
}

ScoredTree enumerate(const SubsetView& view, int depth) {
    const LeafScore leaf = leaf_score(view);
    if (depth == 0 || leaf.score == 0) return {leaf.score, Tree::leaf(leaf.label)};
    if (depth == 1) {
        OneLevel s = best_stump(view);
        return {s.score, std::move(s.tree)};
    }
    ScoredTree best{leaf.score, Tree::leaf(leaf.label)};
    for (std::size_t f = 0; f < view.data().num_features(); ++f) {
        const SplitCandidates c = split_candidates(view, f);
        for (int t = 1; t <= c.m(); ++t) {
            auto [l, r] = split_view(view, f, c.threshold(t));
            ScoredTree a = enumerate(l, depth - 1);
            ScoredTree b = enumerate(r, depth - 1);
            if (a.score + b.score < best.score) {
                best.score = a.score + b.score;
                best.tree = Tree::branch(static_cast<int>(f), c.threshold(t), a.tree, b.tree);
            }
        }
    }
    return best;
}

double weighted_gini(const LabelHistogram& h) {
    const double n = static_cast<double>(h.total());
    if (n == 0.0) return 0.0;
    double sq = 0.0;
    for (Score c : h.counts) sq += static_cast<double>(c) * static_cast<double>(c);
    return n - sq / n;
}

Tree grow(const SubsetView& view, int depth) {
    const Dataset& data = view.data();
    const std::size_t k = data.num_labels();
    const LabelHistogram total = view.histogram();
    if (depth == 0 || total.misclassifications() == 0) return Tree::leaf(total.majority());

    double best = weighted_gini(total) - 1e-12;
    std::optional<std::pair<std::size_t, double>> split;
    for (std::size_t f = 0; f < data.num_features(); ++f) {
        const SplitCandidates c = split_candidates(view, f);
        auto order = view.order(f);
        LabelHistogram left(k);
        std::size_t pos = 0;
        for (int t = 1; t <= c.m(); ++t) {
            for (; pos < static_cast<std::size_t>(c.z(t)); ++pos)
                ++left.counts[static_cast<std::size_t>(data.label(order[pos]))];
            LabelHistogram right(k);
            for (std::size_t y = 0; y < k; ++y) right.counts[y] = total.counts[y] - left.counts[y];
            const double g = weighted_gini(left) + weighted_gini(right);
            if (g < best) {
                best = g;
                split = {f, c.threshold(t)};
            }
        }
    }
    if (!split) return Tree::leaf(total.majority());
    auto [l, r] = split_view(view, split->first, split->second);
    return Tree::branch(static_cast<int>(split->first), split->second, grow(l, depth - 1), grow(r, depth - 1));
}

}  // namespace

ScoredTree brute_force_odt(const SubsetView& view, int depth, const BruteForceLimits& limits) {
    if (view.empty()) throw DataError("brute force on an empty view");
    if (depth < 0) throw std::invalid_argument("depth must be non-negative");
    const double width = static_cast<double>(view.size()) * static_cast<double>(view.data().num_features());
    if (std::pow(width, depth) > limits.max_work)
        throw std::length_error("instance too large for exhaustive enumeration; use fewer rows, features or levels");
    return enumerate(view, depth);
}

Tree greedy_tree(const SubsetView& view, int depth) {
    if (view.empty()) throw DataError("greedy tree on an empty view");
    if (depth < 0) throw std::invalid_argument("depth must be non-negative");
    return grow(view, depth);
}

Evaluation evaluate(const Tree& tree, const SubsetView& view) {
    if (view.empty()) throw DataError("cannot evaluate on an empty view");
    if (tree.max_feature() >= static_cast<int>(view.data().num_features()))
        throw DataError("tree uses feature " + std::to_string(tree.max_feature()) + " but the data has only " +
                        std::to_string(view.data().num_features()) + " features");
    Score errors = 0;
    for (InstanceId i : view.members())
        if (tree.predict(view.data(), i) != view.data().label(i)) ++errors;
    return {errors, 1.0 - static_cast<double>(errors) / static_cast<double>(view.size())};
}

}  // namespace odt
