#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "odt/dataset.hpp"

namespace odt {

/// Best tree of depth at most one for one side of a root split.
struct SideTree {
    Score score = 0;
    // Absent when a single leaf is optimal.
    std::optional<std::size_t> feature;
    double threshold = 0.0;
};

struct D2Result {
    SideTree left;
    SideTree right;
    // Instances visited across all second-feature sweeps.
    std::uint64_t visits = 0;
};

/// Running label counts at one sweep position, before the visited instance
/// is counted. left_counts / right_counts are the C histograms; the totals
/// are FQ_L / FQ_R.
struct D2SweepState {
    std::size_t second_feature;
    InstanceId instance;
    bool goes_left;
    std::span<const Score> left_counts;
    std::span<const Score> left_totals;
    std::span<const Score> right_counts;
    std::span<const Score> right_totals;
};

using D2Observer = std::function<void(const D2SweepState&)>;

/// Optimal depth-one subtrees of both sides of the split x[f1] <= tau, found
/// with one sorted sweep per second feature and O(|Y|) counters.
D2Result d2_split(const SubsetView& view, std::size_t f1, double tau, const D2Observer& observer = {});

/// Same, addressing the root split by its 1-based threshold index.
D2Result d2_split(const SubsetView& view, const SplitCandidates& cands, int w);

/// Reusable scratch space so repeated calls avoid per-call allocation.
class D2Workspace {
public:
    D2Result run(const SubsetView& view, std::size_t f1, double tau, const D2Observer& observer = {});

private:
    std::vector<std::uint8_t> goes_left_;
    std::vector<Score> counts_;
};

}  // namespace odt
