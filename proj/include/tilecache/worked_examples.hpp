#pragma once

// Reference vectors used by the self-test and the test suites.

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "tilecache/engines.hpp"
#include "tilecache/trace.hpp"

namespace tilecache::worked {

// n = 4, M = 12, (1,1,1) LRU replay. One row per innermost iteration: the
// slot contents (entry names such as "a01", "--" for empty) and timestamps
// after the iteration's three events, plus the cumulative counters.
inline constexpr std::int32_t kTableN = 4;
inline constexpr std::int32_t kTableCapacity = 12;

struct TableRow {
    std::uint64_t event;  // cumulative events after this row (3 per iteration)
    std::array<std::string_view, 12> slots;
    std::array<std::uint64_t, 12> stamps;
    std::uint64_t reads;
    std::uint64_t writes;
};

const std::vector<TableRow>& lru_table();

// Parses "a01" / "b23" / "c10" into an id under the n = 4 scheme; "--" gives kEmpty.
EntryId entry_from_name(std::string_view name);

struct Checkpoint {
    std::uint64_t event;
    std::uint64_t reads;
    std::uint64_t writes;
};

// The checkpoint list as stated for the acceptance gate.
const std::vector<Checkpoint>& stated_checkpoints();

// n = 2, M = 6 fast-engine state before and after accessing id 10.
FastCacheState fast_example_before();
FastCacheState fast_example_after();
inline constexpr EntryId kFastExampleId = 10;

}  // namespace tilecache::worked
