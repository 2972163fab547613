#pragma once

#include <memory>
#include <optional>

#include "odt/dataset.hpp"

namespace odt {

inline constexpr Score kInfiniteScore = std::numeric_limits<Score>::max() / 4;

struct PlanNode;

/// Branching decisions of a solved subtree; null means "leaf here".
using Plan = std::shared_ptr<const PlanNode>;

struct PlanNode {
    std::size_t feature;
    double threshold;
    Plan left;
    Plan right;
};

inline Plan make_plan(std::size_t feature, double threshold, Plan left = nullptr, Plan right = nullptr) {
    return std::make_shared<const PlanNode>(PlanNode{feature, threshold, std::move(left), std::move(right)});
}

/// Outcome of solving one (subset, depth) subproblem under a cutoff.
///
/// exact:  `score` is the training score of the tree described by `plan`,
///         within the subproblem's gap budget of the optimum.
/// !exact: no tree beats the cutoff by more than the gap budget; `score` is
///         at least the cutoff and at most optimum + gap budget. With a zero
///         budget it is a lower bound on the optimum.
struct SubproblemResult {
    Score score = 0;
    bool exact = false;
    Plan plan;

    static SubproblemResult leaf(Score s) { return {s, true, nullptr}; }
    static SubproblemResult bound(Score s) { return {s, false, nullptr}; }

    std::optional<std::pair<std::size_t, double>> best_split() const {
        if (!plan) return std::nullopt;
        return std::make_pair(plan->feature, plan->threshold);
    }
};

}  // namespace odt
