#pragma once

#include <cstdint>
#include <list>
#include <unordered_map>
#include <vector>

#include "odt/result.hpp"

namespace odt {

/// Identifies a subproblem by its instance set, remaining depth and gap
/// budget. Equality compares the full instance list, so digest collisions
/// never merge distinct subproblems.
struct CacheKey {
    std::uint64_t digest = 0;
    std::vector<InstanceId> members;  // ascending
    int depth = 0;
    Score gap = 0;

    CacheKey() = default;
    CacheKey(std::vector<InstanceId> members, int depth, Score gap);
    CacheKey(std::vector<InstanceId> members, int depth, Score gap, std::uint64_t digest);

    static CacheKey of(const SubsetView& view, int depth, Score gap);

    friend bool operator==(const CacheKey& a, const CacheKey& b) {
        return a.digest == b.digest && a.depth == b.depth && a.gap == b.gap && a.members == b.members;
    }
};

struct CacheKeyHash {
    std::size_t operator()(const CacheKey& k) const noexcept {
        return static_cast<std::size_t>(k.digest ^ (static_cast<std::uint64_t>(k.depth) * 0x9e3779b97f4a7c15ULL) ^
                                        (static_cast<std::uint64_t>(k.gap) << 32));
    }
};

enum class HitKind { miss, exact, bound };

struct CacheHit {
    HitKind kind = HitKind::miss;
    SubproblemResult result;
};

/// Memo table of subproblem results. Exact entries are reusable under any
/// cutoff; bound entries only when the bound reaches the requested cutoff.
/// With a positive capacity the least recently used entry is evicted.
class SubproblemCache {
public:
    explicit SubproblemCache(std::size_t capacity = 0) : capacity_(capacity) {}

    CacheHit lookup(const CacheKey& key, Score cutoff);
    void store(const CacheKey& key, const SubproblemResult& result);

    std::size_t size() const { return entries_.size(); }
    std::uint64_t hits() const { return hits_; }
    std::uint64_t misses() const { return misses_; }
    void clear();

private:
    struct Slot {
        SubproblemResult result;
        std::list<const CacheKey*>::iterator lru;
    };

    void touch(Slot& slot);
    void evict_if_needed();

    std::size_t capacity_;
    std::unordered_map<CacheKey, Slot, CacheKeyHash> entries_;
    std::list<const CacheKey*> lru_;  // front = most recent
    std::uint64_t hits_ = 0;
    std::uint64_t misses_ = 0;
};

}  // namespace odt
