#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tilecache/trace.hpp"

namespace tilecache {

using Slot = std::int32_t;
inline constexpr Slot kNoSlot = -1;
inline constexpr EntryId kEmpty = -1;

struct Counters {
    std::uint64_t reads = 0;
    std::uint64_t writes = 0;

    std::uint64_t io() const { return reads + writes; }
    friend bool operator==(const Counters&, const Counters&) = default;
};

// Every engine starts with slot p stamped p and the clock at M, so the first
// access is stamped M and empty slots fill left to right.

// ---------------------------------------------------------------------------
// O(M) LRU: linear scan for the id, then for the minimal timestamp on a miss.

struct ScanCacheState {
    std::vector<EntryId> resident;
    std::vector<std::uint64_t> timestamps;
    std::vector<std::uint8_t> dirty;
    std::uint64_t time = 0;
};

class ScanLru {
public:
    explicit ScanLru(std::int32_t capacity);

    void touch(AccessEvent ev);
    // Charges one write per dirty resident; returns the number charged.
    std::uint64_t flush();

    const Counters& counters() const { return counters_; }
    const ScanCacheState& state() const { return state_; }
    std::int32_t capacity() const { return static_cast<std::int32_t>(state_.resident.size()); }
    // Slots examined by the most recent touch.
    std::uint64_t last_inspections() const { return inspections_; }

private:
    ScanCacheState state_;
    Counters counters_;
    std::uint64_t inspections_ = 0;
};

// ---------------------------------------------------------------------------
// O(1) LRU: slots are threaded oldest -> youngest through next_younger, with
// next_older as the reverse chain, and index_in_cache maps id -> slot.

struct FastCacheState {
    std::vector<EntryId> id_array;
    std::vector<std::uint64_t> timestamps;
    std::vector<std::uint8_t> write_or_no;
    std::vector<Slot> next_younger;
    std::vector<Slot> next_older;
    Slot oldest = kNoSlot;
    Slot youngest = kNoSlot;
    std::vector<Slot> index_in_cache;
    std::uint64_t global_time = 0;
};

// Full-structure audit of the chain, timestamp order and reverse index.
// Returns a description of the first violation found.
std::optional<std::string> check_invariants(const FastCacheState& state);

class FastLru {
public:
    FastLru(std::int32_t capacity, EntryId id_space);

    // Adopts an existing state as-is (after validating it with check_invariants).
    static FastLru from_state(FastCacheState state, Counters counters = {});

    void touch(AccessEvent ev);
    std::uint64_t flush();

    const Counters& counters() const { return counters_; }
    const FastCacheState& state() const { return state_; }
    std::int32_t capacity() const { return static_cast<std::int32_t>(state_.id_array.size()); }
    // Element writes (state arrays, anchors, clock, counters) made by the most recent touch.
    std::uint32_t last_updates() const { return updates_; }

private:
    FastLru() = default;

    template <class T, class V>
    void put(T& target, V value) {
        target = value;
        ++updates_;
    }

    void move_to_youngest(Slot slot);

    FastCacheState state_;
    Counters counters_;
    std::uint32_t updates_ = 0;
};

// ---------------------------------------------------------------------------
// LFU: evicts the minimal use count, ties to the oldest timestamp. Counts
// start at 1 on insertion and are forgotten on eviction.

struct LfuCacheState {
    std::vector<EntryId> resident;
    std::vector<std::uint64_t> frequency;
    std::vector<std::uint64_t> timestamps;
    std::vector<std::uint8_t> dirty;
    std::uint64_t time = 0;
};

class LfuCache {
public:
    LfuCache(std::int32_t capacity, EntryId id_space);

    static LfuCache from_state(LfuCacheState state, EntryId id_space, Counters counters = {});

    void touch(AccessEvent ev);
    std::uint64_t flush();

    const Counters& counters() const { return counters_; }
    const LfuCacheState& state() const { return state_; }
    std::int32_t capacity() const { return static_cast<std::int32_t>(state_.resident.size()); }

private:
    LfuCache() = default;

    LfuCacheState state_;
    std::vector<Slot> index_;  // id -> slot
    Counters counters_;
};

}  // namespace tilecache
