#pragma once

#include <cstdint>
#include <functional>
#include <string_view>

#include "tilecache/engines.hpp"
#include "tilecache/trace.hpp"

namespace tilecache {

enum class Engine : std::uint8_t { LruScan, LruFast, Lfu };

std::string_view to_string(Engine engine);
Engine parse_engine(std::string_view text);  // "lru-scan" | "lru-fast" | "lfu"

struct SimResult {
    std::uint64_t reads = 0;
    std::uint64_t writes = 0;  // eviction write-backs plus the final flush
    std::uint64_t io = 0;
    std::uint64_t events = 0;

    friend bool operator==(const SimResult&, const SimResult&) = default;
};

// Called after each event with (1-based event index, reads, writes).
using CounterTap = std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)>;

// Replays `trace` through a fresh engine of the given kind, then flushes.
// Throws TraceError if an event id falls outside [0, 3n^2) for the trace's n.
SimResult simulate(const AccessTrace& trace, std::int32_t capacity, Engine engine,
                   const CounterTap& tap = {});

// Same as simulate(generate_trace(...)) but streams events straight from the
// loop nest, so traces far too large to hold in memory can be replayed.
SimResult simulate_generated(std::int32_t n, const BlockSpec& spec, const TraceOptions& options,
                             std::int32_t capacity, Engine engine);

}  // namespace tilecache
