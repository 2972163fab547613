#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "odt/cache.hpp"
#include "odt/dataset.hpp"
#include "odt/depth2.hpp"
#include "odt/pruning.hpp"
#include "odt/result.hpp"
#include "odt/tree.hpp"

namespace odt {

struct SolverConfig {
    int max_depth = 3;
    // Values below 1 are a fraction of n (floored); values >= 1 must be
    // whole numbers of misclassifications.
    double max_gap = 0.0;
    std::optional<double> time_limit_seconds;

    bool enable_nb = true;
    bool enable_is = true;
    bool enable_sp = true;
    bool enable_d2 = true;
    bool enable_cache = true;

    // Right-subtree cutoff slack: shortest interval side to the midpoint
    // (default) or the longest one.
    bool eta_longest_side = false;
    // 0 = unbounded.
    std::size_t cache_capacity = 0;

    Score resolve_gap(std::size_t n) const;
    void validate() const;
};

struct GapShare {
    Score local = 0;
    Score left = 0;
    Score right = 0;
};

/// Half of the budget (floored) stays at the current depth; the rest is
/// split between the children, the left child taking the odd unit.
GapShare distribute_gap(Score total);

struct TracePoint {
    double elapsed_seconds;
    Score incumbent;
};

struct SearchStats {
    std::uint64_t solve_calls = 0;
    std::uint64_t branch_calls = 0;
    std::uint64_t split_evaluations = 0;
    std::uint64_t d2_calls = 0;
    std::uint64_t d2_visits = 0;
    std::uint64_t cache_hits = 0;
    std::uint64_t cache_misses = 0;
    // Threshold indices removed by each technique.
    std::uint64_t pruned_nb = 0;
    std::uint64_t pruned_is = 0;
    std::uint64_t pruned_sp = 0;
    // Root incumbent over time; non-increasing in score.
    std::vector<TracePoint> trace;

    bool same_counters(const SearchStats& o) const {
        return solve_calls == o.solve_calls && branch_calls == o.branch_calls &&
               split_evaluations == o.split_evaluations && d2_calls == o.d2_calls && d2_visits == o.d2_visits &&
               cache_hits == o.cache_hits && cache_misses == o.cache_misses && pruned_nb == o.pruned_nb &&
               pruned_is == o.pruned_is && pruned_sp == o.pruned_sp;
    }
};

struct SolveOutcome {
    Tree tree;
    Score score = 0;
    // Certified: optimum >= lower_bound.
    Score lower_bound = 0;
    Score resolved_max_gap = 0;
    bool timed_out = false;
    double elapsed_seconds = 0.0;
    SearchStats stats;

    Score gap() const { return score - lower_bound; }
    bool optimal() const { return !timed_out && score == lower_bound; }
};

/// Depth-bounded optimal classification tree search on continuous features.
///
/// solve(view, depth, cutoff, gap) follows the contract documented on
/// SubproblemResult: it returns an exact result whenever a tree scoring at
/// most the cutoff exists within the gap budget, otherwise a bound that is
/// at least the cutoff. Thresholds of one feature are searched as a stack of
/// index intervals shrunk by similarity bounds from already solved splits.
class Solver {
public:
    using ResultObserver =
        std::function<void(const SubsetView& view, int depth, Score cutoff, Score gap, const SubproblemResult&)>;

    Solver(const Dataset& data, SolverConfig config);

    /// Solves the full dataset at config.max_depth and rebuilds the tree.
    SolveOutcome run();

    SubproblemResult solve(const SubsetView& view, int depth, Score cutoff = kInfiniteScore, Score gap = 0);

    /// Best split on one feature (or the leaf), searching only for trees
    /// scoring below `ub`.
    SubproblemResult branch(const SubsetView& view, int depth, std::size_t feature, Score ub = kInfiniteScore,
                            Score gap = 0);

    /// Scores of both children of x[feature] <= tau: the left side under
    /// cutoff `ub`, the right side under the remaining budget.
    std::pair<SubproblemResult, SubproblemResult> split_eval(const SubsetView& view, int depth, std::size_t feature,
                                                             double tau, Score ub = kInfiniteScore, Score gap = 0);

    const SearchStats& stats() const { return stats_; }
    const SolverConfig& config() const { return config_; }
    bool timed_out() const { return timed_out_; }

    // Called for every subproblem result; for instrumentation in tests.
    void set_result_observer(ResultObserver observer) { observer_ = std::move(observer); }

private:
    struct Incumbent {
        Score score;
        Plan plan;
    };

    void search_feature(const SubsetView& view, int depth, const SplitCandidates& cands, Score cutoff,
                        const GapShare& gaps, Incumbent& best);
    std::pair<SubproblemResult, SubproblemResult> evaluate_split(const SubsetView& view, int depth,
                                                                 const SplitCandidates& cands, int w, Score target,
                                                                 Score eta, const GapShare& gaps,
                                                                 const std::vector<Score>* prefix);
    SubproblemResult finish(const SubsetView& view, int depth, Score cutoff, Score gap, const Incumbent& best);
    void notify(const SubsetView& view, int depth, Score cutoff, Score gap, const SubproblemResult& r) const;
    bool out_of_time();
    double elapsed() const;

    const Dataset& data_;
    SolverConfig config_;
    SearchStats stats_;
    SubproblemCache cache_;
    D2Workspace d2_;
    ResultObserver observer_;
    const SubsetView* root_view_ = nullptr;
    std::chrono::steady_clock::time_point start_;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
    bool timed_out_ = false;
};

/// Replays the plan of an exact result on the view, labelling leaves with
/// majority labels. Throws std::logic_error if the rebuilt tree does not
/// reproduce the result's score.
Tree reconstruct_tree(const SubproblemResult& result, const SubsetView& view);

}  // namespace odt
