#include <random>
#include <set>

#include "doctest.h"
#include "odt/baseline.hpp"
#include "odt/pruning.hpp"
#include "support/instances.hpp"

using namespace odt;

namespace {

Dataset example_data() {
    return Dataset({0.4, 0.5, 0.5, 0.7, 0.8, 1.0}, 1, {0, 0, 0, 0, 0, 0});
}

std::set<int> members(const std::vector<Interval>& ivs) {
    std::set<int> s;
    for (const Interval& iv : ivs)
        for (int k = iv.lo; k <= iv.hi; ++k) s.insert(k);
    return s;
}

// Scores of every root threshold of feature f with optimal subtrees of
// `depth - 1` levels on both sides.
std::vector<Score> true_split_scores(const SubsetView& view, std::size_t f, int depth, const SplitCandidates& c) {
    std::vector<Score> out(static_cast<std::size_t>(c.m() + 1), 0);
    for (int k = 1; k <= c.m(); ++k) {
        auto [l, r] = split_view(view, f, c.threshold(k));
        out[static_cast<std::size_t>(k)] = brute_force_odt(l, depth - 1).score + brute_force_odt(r, depth - 1).score;
    }
    return out;
}

std::optional<int> linear_lower(int u, Score delta, const SplitCandidates& c) {
    std::optional<int> best;
    for (int k = 1; k <= c.m(); ++k)
        if (c.z(k) <= c.z(u) - delta) best = k;
    return best;
}

std::optional<int> linear_upper(int u, Score delta, const SplitCandidates& c) {
    for (int k = 1; k <= c.m(); ++k)
        if (c.z(k) >= c.z(u) + delta) return k;
    return std::nullopt;
}

}  // namespace

TEST_CASE("slb clamps at zero") {
    CHECK(slb(5, 2) == 3);
    CHECK(slb(5, 7) == 0);
    CHECK(slb(0, 0) == 0);
}

TEST_CASE("a_lower and a_upper on the example") {
    const Dataset d = example_data();
    const SplitCandidates c = split_candidates(SubsetView::full(d), 0);
    REQUIRE(c.m() == 4);
    const int u = 3;  // 0.75
    CHECK(c.threshold(u) == doctest::Approx(0.75));
    CHECK(a_lower(u, 2, c) == std::optional<int>(1));
    CHECK(a_upper(u, 2, c) == std::nullopt);
    CHECK(a_lower(u, c.z(u), c) == std::nullopt);
    CHECK(a_upper(1, 100, c) == std::nullopt);
}

TEST_CASE("delta one on distinct values steps to the adjacent index") {
    const Dataset d({0.1, 0.2, 0.3, 0.4, 0.5, 0.6}, 1, {0, 1, 0, 1, 0, 1});
    const SplitCandidates c = split_candidates(SubsetView::full(d), 0);
    for (int u = 1; u <= c.m(); ++u) {
        CHECK(a_lower(u, 1, c) == (u == 1 ? std::nullopt : std::optional<int>(u - 1)));
        CHECK(a_upper(u, 1, c) == (u == c.m() ? std::nullopt : std::optional<int>(u + 1)));
    }
}

TEST_CASE("neighbors") {
    ComputedSplits v;
    CHECK_FALSE(neighbors({5, 7}, v).below);
    CHECK_FALSE(neighbors({5, 7}, v).above);
    v[3] = {};
    v[9] = {};
    const Neighbors n = neighbors({5, 7}, v);
    CHECK(n.below == std::optional<int>(3));
    CHECK(n.above == std::optional<int>(9));
    ComputedSplits only5;
    only5[5] = {};
    const Neighbors m = neighbors({1, 4}, only5);
    CHECK_FALSE(m.below);
    CHECK(m.above == std::optional<int>(5));
}

TEST_CASE("prune_nb examples") {
    const Dataset d = example_data();
    const SplitCandidates c = split_candidates(SubsetView::full(d), 0);
    CHECK(prune_nb({1, 4}, 3, 2, c) == std::vector<Interval>{{1, 1}});

    const Dataset distinct({1, 2, 3, 4, 5, 6, 7}, 1, {0, 0, 0, 0, 0, 0, 0});
    const SplitCandidates e = split_candidates(SubsetView::full(distinct), 0);
    CHECK(prune_nb({1, 6}, 3, 1, e) == std::vector<Interval>{{1, 2}, {4, 6}});
    CHECK(prune_nb({1, 6}, 3, 8, e).empty());
}

TEST_CASE("prune_is examples") {
    const Dataset distinct({1, 2, 3, 4, 5, 6, 7}, 1, {0, 0, 0, 0, 0, 0, 0});
    const SplitCandidates c = split_candidates(SubsetView::full(distinct), 0);
    const Interval iv{2, 5};
    CHECK(prune_is(iv, std::nullopt, std::nullopt, 3, 3, ZeroMarkers::initial(c.m()), c) == iv);
    CHECK(prune_is(iv, std::nullopt, std::nullopt, 0, 0, ZeroMarkers{iv.hi + 1, c.m() + 1}, c).empty());
    // Non-positive deltas are no-ops.
    CHECK(prune_is(iv, 1, 6, 0, -2, ZeroMarkers::initial(c.m()), c) == iv);
    // u = 1 with delta 3 removes indices moving fewer than 3 instances.
    CHECK(prune_is(iv, 1, std::nullopt, 3, 0, ZeroMarkers::initial(c.m()), c) == Interval{4, 5});
    CHECK(prune_is(iv, std::nullopt, 6, 0, 2, ZeroMarkers::initial(c.m()), c) == Interval{2, 4});
    CHECK(prune_is(iv, 1, 6, 10, 0, ZeroMarkers::initial(c.m()), c).empty());
}

TEST_CASE("prune_sp examples") {
    const Interval iv{2, 5};
    CHECK(prune_sp(iv, 6, 3, 4).empty());
    CHECK(prune_sp(iv, 7, 3, 4) == iv);
    CHECK(prune_sp(iv, 0, std::nullopt, 4) == iv);
    CHECK(prune_sp(iv, 0, 4, std::nullopt) == iv);
}

TEST_CASE("binary searches agree with linear scans") {
    std::mt19937_64 rng(7);
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        const Dataset d = testing::random_dataset(seed);
        const SubsetView all = SubsetView::full(d);
        for (std::size_t f = 0; f < d.num_features(); ++f) {
            const SplitCandidates c = split_candidates(all, f);
            for (int u = 1; u <= c.m(); ++u)
                for (Score delta = 1; delta <= static_cast<Score>(d.size()) + 1; ++delta) {
                    CHECK(a_lower(u, delta, c) == linear_lower(u, delta, c));
                    CHECK(a_upper(u, delta, c) == linear_upper(u, delta, c));
                }
        }
    }
}

TEST_CASE("neighbourhood pruning only removes non-improving thresholds") {
    // For every solved w and target T, delta = max(1, theta_w - T); every
    // removed index other than w must score strictly above T.
    int checked = 0;
    for (std::uint64_t seed = 100; seed < 160; ++seed) {
        const Dataset d = testing::random_dataset(seed, {4, 24, 1, 3, 2, 3});
        const SubsetView all = SubsetView::full(d);
        for (int depth = 1; depth <= 2; ++depth)
            for (std::size_t f = 0; f < d.num_features(); ++f) {
                const SplitCandidates c = split_candidates(all, f);
                if (c.m() == 0) continue;
                const auto theta = true_split_scores(all, f, depth, c);
                const Interval full{1, c.m()};
                for (int w = 1; w <= c.m(); ++w)
                    for (Score target = 0; target <= theta[static_cast<std::size_t>(w)]; ++target) {
                        const Score delta = std::max<Score>(1, theta[static_cast<std::size_t>(w)] - target);
                        const std::set<int> kept = members(prune_nb(full, w, delta, c));
                        CHECK(kept.count(w) == 0);
                        for (int k = 1; k <= c.m(); ++k)
                            if (k != w && kept.count(k) == 0) {
                                CHECK(theta[static_cast<std::size_t>(k)] > target);
                                ++checked;
                            }
                    }
            }
    }
    CHECK(checked > 0);
}

TEST_CASE("interval shrinking only removes non-improving thresholds") {
    for (std::uint64_t seed = 200; seed < 240; ++seed) {
        const Dataset d = testing::random_dataset(seed, {4, 24, 1, 3, 2, 3});
        const SubsetView all = SubsetView::full(d);
        for (std::size_t f = 0; f < d.num_features(); ++f) {
            const SplitCandidates c = split_candidates(all, f);
            if (c.m() < 3) continue;
            const auto theta = true_split_scores(all, f, 2, c);
            for (int u = 1; u <= c.m(); ++u)
                for (int v = u + 2; v <= c.m(); ++v)
                    for (Score target = 0; target <= static_cast<Score>(d.size()); ++target) {
                        const Interval iv{u + 1, v - 1};
                        const Interval kept = prune_is(iv, u, v, theta[static_cast<std::size_t>(u)] - target,
                                                       theta[static_cast<std::size_t>(v)] - target,
                                                       ZeroMarkers::initial(c.m()), c);
                        for (int k = iv.lo; k <= iv.hi; ++k)
                            if (!kept.contains(k)) CHECK(theta[static_cast<std::size_t>(k)] > target);
                    }
        }
    }
}

TEST_CASE("smaller deltas never prune more") {
    for (std::uint64_t seed = 300; seed < 340; ++seed) {
        const Dataset d = testing::random_dataset(seed);
        const SubsetView all = SubsetView::full(d);
        for (std::size_t f = 0; f < d.num_features(); ++f) {
            const SplitCandidates c = split_candidates(all, f);
            for (int w = 1; w <= c.m(); ++w)
                for (Score delta = 2; delta <= static_cast<Score>(d.size()); ++delta) {
                    const std::set<int> big = members(prune_nb({1, c.m()}, w, delta, c));
                    const std::set<int> small = members(prune_nb({1, c.m()}, w, delta - 1, c));
                    for (int k : big) CHECK(small.count(k) == 1);
                }
        }
    }
}
