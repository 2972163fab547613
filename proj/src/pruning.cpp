#include "odt/pruning.hpp"

#include <algorithm>

namespace odt {

std::optional<int> a_lower(int u, Score delta, const SplitCandidates& cands) {
    const Score bound = cands.z(u) - delta;
    if (bound < 1) return std::nullopt;
    auto z = cands.z_map();
    // z[0] = 0 is a sentinel; search indices 1..m.
    auto it = std::upper_bound(z.begin() + 1, z.end(), bound);
    const int k = static_cast<int>(it - z.begin()) - 1;
    if (k < 1) return std::nullopt;
    return k;
}

std::optional<int> a_upper(int u, Score delta, const SplitCandidates& cands) {
    const Score bound = cands.z(u) + delta;
    auto z = cands.z_map();
    auto it = std::lower_bound(z.begin() + 1, z.end(), bound);
    if (it == z.end()) return std::nullopt;
    return static_cast<int>(it - z.begin());
}

Neighbors neighbors(const Interval& iv, const ComputedSplits& solved) {
    Neighbors nb;
    auto it = solved.lower_bound(iv.lo);
    if (it != solved.begin()) nb.below = std::prev(it)->first;
    auto jt = solved.upper_bound(iv.hi);
    if (jt != solved.end()) nb.above = jt->first;
    return nb;
}

std::vector<Interval> prune_nb(const Interval& iv, int w, Score delta, const SplitCandidates& cands) {
    std::vector<Interval> out;
    if (auto lo = a_lower(w, delta, cands)) {
        Interval left{iv.lo, std::min(*lo, iv.hi)};
        if (!left.empty()) out.push_back(left);
    }
    if (auto hi = a_upper(w, delta, cands)) {
        Interval right{std::max(*hi, iv.lo), iv.hi};
        if (!right.empty()) out.push_back(right);
    }
    return out;
}

Interval prune_is(const Interval& iv, std::optional<int> u, std::optional<int> v, Score delta_u, Score delta_v,
                  const ZeroMarkers& zm, const SplitCandidates& cands) {
    int lo = std::max(iv.lo, zm.left);
    int hi = std::min(iv.hi, zm.right);
    if (u && delta_u > 0) lo = std::max(lo, a_upper(*u, delta_u, cands).value_or(cands.m() + 1));
    if (v && delta_v > 0) hi = std::min(hi, a_lower(*v, delta_v, cands).value_or(0));
    return {lo, hi};
}

Interval prune_sp(const Interval& iv, Score target, std::optional<Score> theta_u_left,
                  std::optional<Score> theta_v_right) {
    if (theta_u_left && theta_v_right && *theta_u_left + *theta_v_right > target) return {iv.lo, iv.lo - 1};
    return iv;
}

}  // namespace odt
