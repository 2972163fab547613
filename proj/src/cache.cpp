#include "odt/cache.hpp"

#include <stdexcept>

namespace odt {

namespace {

std::uint64_t digest_of(const std::vector<InstanceId>& members) {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ members.size();
    for (InstanceId i : members) {
        std::uint64_t x = static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) + 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        x ^= x >> 31;
        h = (h ^ x) * 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

CacheKey::CacheKey(std::vector<InstanceId> m, int d, Score g)
    : digest(digest_of(m)), members(std::move(m)), depth(d), gap(g) {}

CacheKey::CacheKey(std::vector<InstanceId> m, int d, Score g, std::uint64_t forced_digest)
    : digest(forced_digest), members(std::move(m)), depth(d), gap(g) {}

CacheKey CacheKey::of(const SubsetView& view, int depth, Score gap) {
    auto m = view.members();
    return CacheKey(std::vector<InstanceId>(m.begin(), m.end()), depth, gap);
}

CacheHit SubproblemCache::lookup(const CacheKey& key, Score cutoff) {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        ++misses_;
        return {};
    }
    Slot& slot = it->second;
    if (slot.result.exact) {
        touch(slot);
        ++hits_;
        return {HitKind::exact, slot.result};
    }
    if (slot.result.score >= cutoff) {
        touch(slot);
        ++hits_;
        return {HitKind::bound, slot.result};
    }
    ++misses_;
    return {};
}

void SubproblemCache::store(const CacheKey& key, const SubproblemResult& result) {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        auto [pos, inserted] = entries_.emplace(key, Slot{result, {}});
        if (capacity_ > 0) {
            lru_.push_front(&pos->first);
            pos->second.lru = lru_.begin();
            evict_if_needed();
        }
        return;
    }
    Slot& slot = it->second;
    SubproblemResult& cur = slot.result;
    if (cur.exact) {
        if (!result.exact) {
            // A zero-budget bound is a lower bound on the optimum and can never
            // exceed a stored optimum.
            if (key.gap == 0 && result.score > cur.score)
                throw std::logic_error("cache: bound " + std::to_string(result.score) +
                                       " exceeds stored optimum " + std::to_string(cur.score));
            touch(slot);
            return;
        }
        if (result.score < cur.score) cur = result;
    } else if (result.exact || result.score > cur.score) {
        cur = result;
    }
    touch(slot);
}

void SubproblemCache::clear() {
    entries_.clear();
    lru_.clear();
    hits_ = 0;
    misses_ = 0;
}

void SubproblemCache::touch(Slot& slot) {
    if (capacity_ == 0) return;
    lru_.splice(lru_.begin(), lru_, slot.lru);
}

void SubproblemCache::evict_if_needed() {
    if (capacity_ == 0) return;
    while (entries_.size() > capacity_) {
        auto victim = entries_.find(*lru_.back());
        lru_.pop_back();
        entries_.erase(victim);
    }
}

}  // namespace odt
