#include "odt/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace odt {

Score SolverConfig::resolve_gap(std::size_t n) const {
    validate();
    if (max_gap < 1.0) return static_cast<Score>(std::floor(max_gap * static_cast<double>(n)));
    return static_cast<Score>(max_gap);
}

void SolverConfig::validate() const {
    if (max_depth < 0) throw std::invalid_argument("max_depth must be non-negative");
    if (!(max_gap >= 0.0) || !std::isfinite(max_gap)) throw std::invalid_argument("max_gap must be non-negative");
    if (max_gap >= 1.0 && max_gap != std::floor(max_gap))
        throw std::invalid_argument("an absolute max_gap must be a whole number");
    if (time_limit_seconds && !(*time_limit_seconds > 0.0))
        throw std::invalid_argument("time limit must be positive");
}

GapShare distribute_gap(Score total) {
    const Score local = total / 2;
    const Score rest = total - local;
    return {local, rest - rest / 2, rest / 2};
}

Solver::Solver(const Dataset& data, SolverConfig config)
    : data_(data), config_(config), cache_(config.cache_capacity), start_(std::chrono::steady_clock::now()) {
    config_.validate();
}

double Solver::elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

bool Solver::out_of_time() {
    if (timed_out_) return true;
    if (deadline_ && std::chrono::steady_clock::now() >= *deadline_) timed_out_ = true;
    return timed_out_;
}

void Solver::notify(const SubsetView& view, int depth, Score cutoff, Score gap, const SubproblemResult& r) const {
    if (observer_) observer_(view, depth, cutoff, gap, r);
}

SolveOutcome Solver::run() {
    stats_ = SearchStats{};
    cache_.clear();
    timed_out_ = false;
    start_ = std::chrono::steady_clock::now();
    deadline_.reset();
    if (config_.time_limit_seconds)
        deadline_ = start_ + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                 std::chrono::duration<double>(*config_.time_limit_seconds));

    const SubsetView root = SubsetView::full(data_);
    root_view_ = &root;
    const Score gap = config_.resolve_gap(data_.size());
    stats_.trace.push_back({0.0, leaf_score(root).score});

    SubproblemResult result = solve(root, config_.max_depth, kInfiniteScore, gap);
    root_view_ = nullptr;
    if (!result.exact) throw std::logic_error("root search returned a bound without a tree");

    SolveOutcome out;
    out.tree = reconstruct_tree(result, root);
    out.score = result.score;
    out.resolved_max_gap = gap;
    out.timed_out = timed_out_;
    out.lower_bound = timed_out_ ? 0 : std::max<Score>(0, result.score - gap);
    out.elapsed_seconds = elapsed();
    stats_.trace.push_back({out.elapsed_seconds, out.score});
    out.stats = stats_;
    return out;
}

SubproblemResult Solver::solve(const SubsetView& view, int depth, Score cutoff, Score gap) {
    ++stats_.solve_calls;
    if (view.empty()) throw std::invalid_argument("solve on an empty view");
    const LeafScore leaf = leaf_score(view);
    if (depth == 0 || leaf.score == 0) {
        auto r = SubproblemResult::leaf(leaf.score);
        notify(view, depth, cutoff, gap, r);
        return r;
    }
    if (cutoff <= 0) {
        // Nothing scores below zero.
        auto r = SubproblemResult::bound(0);
        notify(view, depth, cutoff, gap, r);
        return r;
    }

    std::optional<CacheKey> key;
    if (config_.enable_cache) {
        key = CacheKey::of(view, depth, gap);
        CacheHit hit = cache_.lookup(*key, cutoff);
        stats_.cache_hits = cache_.hits();
        stats_.cache_misses = cache_.misses();
        if (hit.kind != HitKind::miss) {
            notify(view, depth, cutoff, gap, hit.result);
            return hit.result;
        }
    }

    Incumbent best{leaf.score, nullptr};
    const GapShare gaps = distribute_gap(gap);
    for (std::size_t f = 0; f < data_.num_features(); ++f) {
        if (best.score == 0 || out_of_time()) break;
        search_feature(view, depth, split_candidates(view, f), cutoff, gaps, best);
    }

    SubproblemResult r = finish(view, depth, cutoff, gap, best);
    if (key && !timed_out_) cache_.store(*key, r);
    return r;
}

SubproblemResult Solver::finish(const SubsetView& view, int depth, Score cutoff, Score gap, const Incumbent& best) {
    // Every skipped split provably scores at least min(cutoff, best) - gap.
    SubproblemResult r = (best.score <= cutoff || timed_out_) ? SubproblemResult{best.score, true, best.plan}
                                                               : SubproblemResult::bound(cutoff);
    notify(view, depth, cutoff, gap, r);
    return r;
}

SubproblemResult Solver::branch(const SubsetView& view, int depth, std::size_t feature, Score ub, Score gap) {
    if (depth < 1) throw std::invalid_argument("branch needs depth >= 1");
    const LeafScore leaf = leaf_score(view);
    Incumbent best{leaf.score, nullptr};
    search_feature(view, depth, split_candidates(view, feature), ub, distribute_gap(gap), best);
    return finish(view, depth, ub, gap, best);
}

std::pair<SubproblemResult, SubproblemResult> Solver::split_eval(const SubsetView& view, int depth,
                                                                 std::size_t feature, double tau, Score ub,
                                                                 Score gap) {
    if (depth < 1) throw std::invalid_argument("split_eval needs depth >= 1");
    const SplitCandidates cands = split_candidates(view, feature);
    const auto& t = cands.thresholds();
    auto it = std::find(t.begin(), t.end(), tau);
    if (it == t.end()) throw std::invalid_argument("split_eval: threshold is not a candidate of this view");
    const int w = static_cast<int>(it - t.begin()) + 1;
    return evaluate_split(view, depth, cands, w, ub, 0, distribute_gap(gap), nullptr);
}

std::pair<SubproblemResult, SubproblemResult> Solver::evaluate_split(const SubsetView& view, int depth,
                                                                     const SplitCandidates& cands, int w,
                                                                     Score target, Score eta, const GapShare& gaps,
                                                                     const std::vector<Score>* prefix) {
    ++stats_.split_evaluations;
    const std::size_t f = cands.feature();
    const double tau = cands.threshold(w);

    if (depth == 1 && prefix) {
        // Children are leaves; read their histograms off the prefix counts.
        const std::size_t k = data_.num_labels();
        const Score* below = prefix->data() + static_cast<std::size_t>(w) * k;
        const Score* total = prefix->data() + static_cast<std::size_t>(cands.m() + 1) * k;
        Score max_left = 0, max_right = 0;
        for (std::size_t y = 0; y < k; ++y) {
            max_left = std::max(max_left, below[y]);
            max_right = std::max(max_right, total[y] - below[y]);
        }
        const Score n_left = cands.z(w);
        const Score n_right = static_cast<Score>(view.size()) - n_left;
        return {SubproblemResult::leaf(n_left - max_left), SubproblemResult::leaf(n_right - max_right)};
    }

    if (depth == 2 && config_.enable_d2) {
        ++stats_.d2_calls;
        const D2Result d2 = d2_.run(view, f, tau);
        stats_.d2_visits += d2.visits;
        auto side = [](const SideTree& s) {
            return SubproblemResult{s.score, true, s.feature ? make_plan(*s.feature, s.threshold) : nullptr};
        };
        return {side(d2.left), side(d2.right)};
    }

    auto [left_view, right_view] = split_view(view, f, tau);
    SubproblemResult left = solve(left_view, depth - 1, target, gaps.left);
    const Score right_cutoff = std::max(target - left.score, eta);
    SubproblemResult right = right_cutoff <= 0 ? SubproblemResult::bound(0)
                                               : solve(right_view, depth - 1, right_cutoff, gaps.right);
    return {std::move(left), std::move(right)};
}

void Solver::search_feature(const SubsetView& view, int depth, const SplitCandidates& cands, Score cutoff,
                            const GapShare& gaps, Incumbent& best) {
    const int m = cands.m();
    if (m == 0) return;
    ++stats_.branch_calls;
    const std::size_t f = cands.feature();
    const bool at_root = &view == root_view_;

    // Depth one: per-threshold label counts on the left, plus the totals.
    std::vector<Score> prefix;
    if (depth == 1) {
        const std::size_t k = data_.num_labels();
        prefix.assign(static_cast<std::size_t>(m + 2) * k, 0);
        std::vector<Score> running(k, 0);
        auto order = view.order(f);
        std::size_t pos = 0;
        for (int t = 1; t <= m + 1; ++t) {
            const auto stop = t <= m ? static_cast<std::size_t>(cands.z(t)) : order.size();
            for (; pos < stop; ++pos) ++running[static_cast<std::size_t>(data_.label(order[pos]))];
            std::copy(running.begin(), running.end(), prefix.begin() + static_cast<std::ptrdiff_t>(t * k));
        }
    }

    ZeroMarkers zm = ZeroMarkers::initial(m);
    ComputedSplits solved;
    std::vector<Interval> stack{{1, m}};

    while (!stack.empty()) {
        if (out_of_time()) return;
        const Score target = std::min(cutoff, best.score) - gaps.local;
        if (target <= 0) return;

        Interval iv = stack.back();
        stack.pop_back();

        const Neighbors nb = (config_.enable_is || config_.enable_sp) ? neighbors(iv, solved) : Neighbors{};
        if (config_.enable_is) {
            const Score du = nb.below ? solved.at(*nb.below).theta - target : 0;
            const Score dv = nb.above ? solved.at(*nb.above).theta - target : 0;
            const Interval shrunk = prune_is(iv, nb.below, nb.above, du, dv, zm, cands);
            stats_.pruned_is += static_cast<std::uint64_t>(iv.size() - shrunk.size());
            iv = shrunk;
        }
        if (config_.enable_sp && !iv.empty()) {
            std::optional<Score> theta_u_left, theta_v_right;
            if (nb.below) theta_u_left = solved.at(*nb.below).theta_left;
            if (nb.above) theta_v_right = solved.at(*nb.above).theta_right;
            if (prune_sp(iv, target, theta_u_left, theta_v_right).empty()) {
                stats_.pruned_sp += static_cast<std::uint64_t>(iv.size());
                continue;
            }
        }
        if (iv.empty()) continue;

        const int w = (iv.lo + iv.hi) / 2;
        const Score to_lo = cands.z(w) - cands.z(iv.lo);
        const Score to_hi = cands.z(iv.hi) - cands.z(w);
        const Score eta = config_.eta_longest_side ? std::max(to_lo, to_hi) : std::min(to_lo, to_hi);

        auto [left, right] = evaluate_split(view, depth, cands, w, target, eta, gaps, depth == 1 ? &prefix : nullptr);
        if (timed_out_ && !(left.exact && right.exact)) return;

        SplitRecord rec{left.score + right.score, left.score, right.score, left.exact, right.exact};
        if (left.exact && left.score == 0) zm.left = std::max(zm.left, w + 1);
        if (right.exact && right.score == 0) zm.right = std::min(zm.right, w - 1);

        if (left.exact && right.exact && rec.theta < best.score) {
            best.score = rec.theta;
            best.plan = make_plan(f, cands.threshold(w), left.plan, right.plan);
            if (at_root) stats_.trace.push_back({elapsed(), best.score});
            if (best.score == 0) return;
        }

        const Score ub = std::min(cutoff, best.score) - gaps.local;
        std::vector<Interval> next;
        if (config_.enable_nb) {
            next = prune_nb(iv, w, std::max<Score>(1, rec.theta - ub), cands);
        } else {
            if (iv.lo <= w - 1) next.push_back({iv.lo, w - 1});
            if (w + 1 <= iv.hi) next.push_back({w + 1, iv.hi});
        }
        int kept = 0;
        for (const Interval& n : next) kept += n.size();
        stats_.pruned_nb += static_cast<std::uint64_t>(iv.size() - 1 - kept);
        for (const Interval& n : next) stack.push_back(n);
        solved.emplace(w, rec);
    }
}

namespace {

Tree rebuild(const Plan& plan, const SubsetView& view) {
    if (view.empty()) throw std::logic_error("reconstruction reached an empty subset");
    if (!plan) return Tree::leaf(leaf_score(view).label);
    auto [left, right] = split_view(view, plan->feature, plan->threshold);
    return Tree::branch(static_cast<int>(plan->feature), plan->threshold, rebuild(plan->left, left),
                        rebuild(plan->right, right));
}

}  // namespace

Tree reconstruct_tree(const SubproblemResult& result, const SubsetView& view) {
    if (!result.exact) throw std::logic_error("cannot reconstruct a tree from a bound");
    Tree tree = rebuild(result.plan, view);
    Score errors = 0;
    for (InstanceId i : view.members())
        if (tree.predict(view.data(), i) != view.data().label(i)) ++errors;
    if (errors != result.score)
        throw std::logic_error("reconstructed tree scores " + std::to_string(errors) + " but the search reported " +
                               std::to_string(result.score));
    return tree;
}

}  // namespace odt
