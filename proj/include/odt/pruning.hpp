#pragma once

#include <map>
#include <optional>
#include <vector>

#include "odt/dataset.hpp"

namespace odt {

// Similarity bounds for the thresholds of one feature.
//
// Interval arithmetic happens in threshold-index space (1..m); bounds are
// counted in sorted-instance space through SplitCandidates::z. A threshold k
// "moves" |z(k) - z(w)| instances relative to a solved threshold w, so its
// score is at least theta_w - |z(k) - z(w)|.

/// Inclusive range of 1-based threshold indices; empty iff lo > hi.
struct Interval {
    int lo = 1;
    int hi = 0;

    bool empty() const { return lo > hi; }
    int size() const { return empty() ? 0 : hi - lo + 1; }
    bool contains(int k) const { return lo <= k && k <= hi; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Scores of one solved threshold. Non-exact scores are lower bounds.
struct SplitRecord {
    Score theta = 0;
    Score theta_left = 0;
    Score theta_right = 0;
    bool left_exact = false;
    bool right_exact = false;
};

using ComputedSplits = std::map<int, SplitRecord>;

/// Zero-score markers: every index below `left` (above `right`) is dominated
/// by a solved split whose left (right) subtree is exactly zero.
struct ZeroMarkers {
    int left = 0;
    int right = 0;

    static ZeroMarkers initial(int m) { return {0, m + 1}; }
};

inline Score slb(Score theta_old, Score removed_count) { return theta_old > removed_count ? theta_old - removed_count : 0; }

/// Largest index k with z(k) <= z(u) - delta.
std::optional<int> a_lower(int u, Score delta, const SplitCandidates& cands);

/// Smallest index k with z(k) >= z(u) + delta.
std::optional<int> a_upper(int u, Score delta, const SplitCandidates& cands);

struct Neighbors {
    std::optional<int> below;
    std::optional<int> above;
};

/// Closest solved indices strictly outside the interval on either side.
Neighbors neighbors(const Interval& iv, const ComputedSplits& solved);

/// Removes the thresholds around w that move fewer than delta instances.
std::vector<Interval> prune_nb(const Interval& iv, int w, Score delta, const SplitCandidates& cands);

/// Shrinks the interval using the closest solved splits u < lo and v > hi and
/// the zero markers. Absent neighbours and non-positive deltas are ignored.
Interval prune_is(const Interval& iv, std::optional<int> u, std::optional<int> v, Score delta_u, Score delta_v,
                  const ZeroMarkers& zm, const SplitCandidates& cands);

/// Drops the whole interval when the flanking one-sided scores already sum
/// past the target. `target` is UB - max_gap.
Interval prune_sp(const Interval& iv, Score target, std::optional<Score> theta_u_left,
                  std::optional<Score> theta_v_right);

}  // namespace odt
