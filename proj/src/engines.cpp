#include "tilecache/engines.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace tilecache {

namespace {

void require_capacity(std::int32_t capacity) {
    if (capacity < 1)
        throw ConfigError("cache capacity must be >= 1, got " + std::to_string(capacity));
}

void require_id_space(EntryId id_space) {
    if (id_space < 1) throw ConfigError("id space must be >= 1, got " + std::to_string(id_space));
}

template <class State>
void init_slots(State& s, std::int32_t capacity) {
    s.resident.assign(capacity, kEmpty);
    s.timestamps.resize(capacity);
    std::iota(s.timestamps.begin(), s.timestamps.end(), std::uint64_t{0});
    s.dirty.assign(capacity, 0);
    s.time = static_cast<std::uint64_t>(capacity);
}

std::uint64_t count_dirty(const std::vector<std::uint8_t>& dirty) {
    return static_cast<std::uint64_t>(std::count(dirty.begin(), dirty.end(), std::uint8_t{1}));
}

}  // namespace

// ---------------------------------------------------------------------------

ScanLru::ScanLru(std::int32_t capacity) {
    require_capacity(capacity);
    init_slots(state_, capacity);
}

void ScanLru::touch(AccessEvent ev) {
    auto& s = state_;
    const std::uint64_t stamp = s.time++;
    const std::size_t m = s.resident.size();

    // Every slot is compared, as in the reference simulator.
    std::size_t hit = m;
    for (std::size_t p = 0; p < m; ++p)
        if (s.resident[p] == ev.id) hit = p;
    inspections_ = m;

    if (hit != m) {
        s.timestamps[hit] = stamp;
        s.dirty[hit] = ev.write;
        return;
    }

    const auto victim = static_cast<std::size_t>(
        std::min_element(s.timestamps.begin(), s.timestamps.end()) - s.timestamps.begin());
    inspections_ += m;
    if (s.dirty[victim]) ++counters_.writes;
    ++counters_.reads;
    s.resident[victim] = ev.id;
    s.dirty[victim] = ev.write;
    s.timestamps[victim] = stamp;
}

std::uint64_t ScanLru::flush() {
    const std::uint64_t n = count_dirty(state_.dirty);
    counters_.writes += n;
    std::fill(state_.dirty.begin(), state_.dirty.end(), std::uint8_t{0});
    return n;
}

// ---------------------------------------------------------------------------

FastLru::FastLru(std::int32_t capacity, EntryId id_space) {
    require_capacity(capacity);
    require_id_space(id_space);
    auto& s = state_;
    s.id_array.assign(capacity, kEmpty);
    s.timestamps.resize(capacity);
    std::iota(s.timestamps.begin(), s.timestamps.end(), std::uint64_t{0});
    s.write_or_no.assign(capacity, 0);
    s.next_younger.resize(capacity);
    s.next_older.resize(capacity);
    for (Slot p = 0; p < capacity; ++p) {
        s.next_younger[p] = p + 1 < capacity ? p + 1 : kNoSlot;
        s.next_older[p] = p - 1;
    }
    s.oldest = 0;
    s.youngest = capacity - 1;
    s.index_in_cache.assign(id_space, kNoSlot);
    s.global_time = static_cast<std::uint64_t>(capacity);
}

FastLru FastLru::from_state(FastCacheState state, Counters counters) {
    if (auto problem = check_invariants(state)) throw ConfigError("invalid fast LRU state: " + *problem);
    FastLru engine;
    engine.state_ = std::move(state);
    engine.counters_ = counters;
    return engine;
}

void FastLru::move_to_youngest(Slot slot) {
    auto& s = state_;
    const Slot older = s.next_older[slot];
    const Slot younger = s.next_younger[slot];
    if (slot == s.oldest)
        put(s.oldest, younger);
    else
        put(s.next_younger[older], younger);
    put(s.next_older[younger], older);
    put(s.next_older[slot], s.youngest);
    put(s.next_younger[s.youngest], slot);
    put(s.next_younger[slot], kNoSlot);
    put(s.youngest, slot);
}

void FastLru::touch(AccessEvent ev) {
    auto& s = state_;
    updates_ = 0;
    const std::uint64_t stamp = s.global_time;
    put(s.global_time, stamp + 1);

    const Slot slot = s.index_in_cache[ev.id];
    if (slot != kNoSlot) {
        put(s.timestamps[slot], stamp);
        put(s.write_or_no[slot], ev.write);
        // Youngest is checked first so that M == 1 (oldest == youngest) needs no relinking.
        if (slot != s.youngest) move_to_youngest(slot);
        return;
    }

    const Slot victim = s.oldest;
    if (s.write_or_no[victim]) put(counters_.writes, counters_.writes + 1);
    put(counters_.reads, counters_.reads + 1);
    if (s.id_array[victim] != kEmpty) put(s.index_in_cache[s.id_array[victim]], kNoSlot);
    put(s.id_array[victim], ev.id);
    put(s.write_or_no[victim], ev.write);
    put(s.timestamps[victim], stamp);
    put(s.index_in_cache[ev.id], victim);
    if (victim != s.youngest) move_to_youngest(victim);
}

std::uint64_t FastLru::flush() {
    const std::uint64_t n = count_dirty(state_.write_or_no);
    counters_.writes += n;
    std::fill(state_.write_or_no.begin(), state_.write_or_no.end(), std::uint8_t{0});
    return n;
}

std::optional<std::string> check_invariants(const FastCacheState& s) {
    const auto m = static_cast<Slot>(s.id_array.size());
    if (m < 1) return "empty cache";
    if (s.timestamps.size() != s.id_array.size() || s.write_or_no.size() != s.id_array.size() ||
        s.next_younger.size() != s.id_array.size() || s.next_older.size() != s.id_array.size())
        return "per-slot arrays differ in length";
    auto in_range = [m](Slot p) { return p >= 0 && p < m; };
    if (!in_range(s.oldest) || !in_range(s.youngest)) return "oldest/youngest out of range";
    if (s.next_older[s.oldest] != kNoSlot) return "next_older[oldest] != -1";
    if (s.next_younger[s.youngest] != kNoSlot) return "next_younger[youngest] != -1";

    std::vector<std::uint8_t> seen(m, 0);
    Slot prev = kNoSlot;
    Slot cur = s.oldest;
    for (Slot step = 0; step < m; ++step) {
        if (!in_range(cur)) return "chain ends after " + std::to_string(step) + " slots";
        if (seen[cur]) return "chain revisits slot " + std::to_string(cur);
        seen[cur] = 1;
        if (s.next_older[cur] != prev) return "next_older is not the reverse chain at slot " + std::to_string(cur);
        if (prev != kNoSlot && s.timestamps[prev] >= s.timestamps[cur])
            return "timestamps not increasing at slot " + std::to_string(cur);
        prev = cur;
        cur = s.next_younger[cur];
    }
    if (prev != s.youngest || cur != kNoSlot) return "chain does not end at youngest";
    if (s.timestamps[s.youngest] >= s.global_time) return "timestamp not below the clock";

    const auto space = static_cast<EntryId>(s.index_in_cache.size());
    std::int64_t residents = 0;
    for (Slot p = 0; p < m; ++p) {
        const EntryId id = s.id_array[p];
        if (id == kEmpty) continue;
        if (id < 0 || id >= space) return "resident id out of range at slot " + std::to_string(p);
        if (s.index_in_cache[id] != p) return "index_in_cache disagrees at slot " + std::to_string(p);
        ++residents;
    }
    std::int64_t unmapped = 0;
    for (EntryId id = 0; id < space; ++id) {
        const Slot p = s.index_in_cache[id];
        if (p == kNoSlot) {
            ++unmapped;
        } else if (!in_range(p) || s.id_array[p] != id) {
            return "index_in_cache[" + std::to_string(id) + "] is stale";
        }
    }
    if (unmapped != space - residents) return "reverse index count mismatch";
    return std::nullopt;
}

// ---------------------------------------------------------------------------

LfuCache::LfuCache(std::int32_t capacity, EntryId id_space) {
    require_capacity(capacity);
    require_id_space(id_space);
    init_slots(state_, capacity);
    state_.frequency.assign(capacity, 0);
    index_.assign(id_space, kNoSlot);
}

LfuCache LfuCache::from_state(LfuCacheState state, EntryId id_space, Counters counters) {
    require_id_space(id_space);
    const std::size_t m = state.resident.size();
    if (m < 1 || state.frequency.size() != m || state.timestamps.size() != m || state.dirty.size() != m)
        throw ConfigError("invalid LFU state: per-slot arrays must be nonempty and equal length");
    LfuCache cache;
    cache.index_.assign(id_space, kNoSlot);
    for (std::size_t p = 0; p < m; ++p) {
        const EntryId id = state.resident[p];
        if (id == kEmpty) continue;
        if (id < 0 || id >= id_space || cache.index_[id] != kNoSlot)
            throw ConfigError("invalid LFU state: bad or duplicate resident id");
        if (state.frequency[p] < 1) throw ConfigError("invalid LFU state: resident with zero frequency");
        cache.index_[id] = static_cast<Slot>(p);
    }
    cache.state_ = std::move(state);
    cache.counters_ = counters;
    return cache;
}

void LfuCache::touch(AccessEvent ev) {
    auto& s = state_;
    const std::uint64_t stamp = s.time++;
    const Slot slot = index_[ev.id];
    if (slot != kNoSlot) {
        ++s.frequency[slot];
        s.timestamps[slot] = stamp;
        s.dirty[slot] = ev.write;
        return;
    }

    // Empty slots carry frequency 0 and so are always taken first.
    std::size_t victim = 0;
    for (std::size_t p = 1; p < s.resident.size(); ++p) {
        if (s.frequency[p] < s.frequency[victim] ||
            (s.frequency[p] == s.frequency[victim] && s.timestamps[p] < s.timestamps[victim]))
            victim = p;
    }
    if (s.dirty[victim]) ++counters_.writes;
    ++counters_.reads;
    if (s.resident[victim] != kEmpty) index_[s.resident[victim]] = kNoSlot;
    s.resident[victim] = ev.id;
    s.frequency[victim] = 1;
    s.timestamps[victim] = stamp;
    s.dirty[victim] = ev.write;
    index_[ev.id] = static_cast<Slot>(victim);
}

std::uint64_t LfuCache::flush() {
    const std::uint64_t n = count_dirty(state_.dirty);
    counters_.writes += n;
    std::fill(state_.dirty.begin(), state_.dirty.end(), std::uint8_t{0});
    return n;
}

}  // namespace tilecache
