#pragma once

#include <cstdint>

#include "odt/dataset.hpp"
#include "odt/tree.hpp"

namespace odt {

struct ScoredTree {
    Score score;
    Tree tree;
};

struct BruteForceLimits {
    // Rough cap on (p * n)^depth work units.
    double max_work = 5e9;
};

/// Exhaustive optimum over every tree of at most `depth` levels, using the
/// same candidate thresholds as the solver. Throws std::length_error when the
/// instance is too large for enumeration.
ScoredTree brute_force_odt(const SubsetView& view, int depth, const BruteForceLimits& limits = {});

/// Top-down CART-style tree: each node takes the split with the lowest
/// weighted Gini impurity, stopping at the depth limit, on pure nodes, or
/// when no split lowers impurity.
Tree greedy_tree(const SubsetView& view, int depth);

struct Evaluation {
    Score misclassifications;
    double accuracy;
};

/// Throws DataError on an empty view or a feature id outside the data.
Evaluation evaluate(const Tree& tree, const SubsetView& view);

}  // namespace odt
