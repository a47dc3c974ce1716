#include "tilecache/simulate.hpp"

#include <string>
#include <variant>

namespace tilecache {

std::string_view to_string(Engine engine) {
    switch (engine) {
        case Engine::LruScan: return "lru-scan";
        case Engine::LruFast: return "lru-fast";
        case Engine::Lfu: return "lfu";
    }
    return "?";
}

Engine parse_engine(std::string_view text) {
    if (text == "lru-scan") return Engine::LruScan;
    if (text == "lru-fast") return Engine::LruFast;
    if (text == "lfu") return Engine::Lfu;
    throw ConfigError("unknown engine '" + std::string(text) + "'");
}

namespace {

using AnyEngine = std::variant<ScanLru, FastLru, LfuCache>;

AnyEngine make_engine(Engine kind, std::int32_t capacity, EntryId id_space) {
    switch (kind) {
        case Engine::LruScan: return ScanLru(capacity);
        case Engine::LruFast: return FastLru(capacity, id_space);
        case Engine::Lfu: return LfuCache(capacity, id_space);
    }
    throw ConfigError("unknown engine");
}

template <class E>
SimResult finish(E& engine, std::uint64_t events) {
    engine.flush();
    const auto& c = engine.counters();
    return SimResult{c.reads, c.writes, c.io(), events};
}

}  // namespace

SimResult simulate(const AccessTrace& trace, std::int32_t capacity, Engine kind, const CounterTap& tap) {
    const IdScheme ids(trace.meta.n);
    auto any = make_engine(kind, capacity, ids.space());
    return std::visit(
        [&](auto& engine) {
            std::uint64_t index = 0;
            for (const AccessEvent& ev : trace.events) {
                if (!ids.contains(ev.id))
                    throw TraceError("event " + std::to_string(index + 1) + ": id " + std::to_string(ev.id) +
                                     " outside [0, " + std::to_string(ids.space()) + ")");
                engine.touch(ev);
                ++index;
                if (tap) tap(index, engine.counters().reads, engine.counters().writes);
            }
            return finish(engine, index);
        },
        any);
}

SimResult simulate_generated(std::int32_t n, const BlockSpec& spec, const TraceOptions& options,
                             std::int32_t capacity, Engine kind) {
    const IdScheme ids(n);
    validate(spec, n);
    auto any = make_engine(kind, capacity, ids.space());
    return std::visit(
        [&](auto& engine) {
            std::uint64_t events = 0;
            emit_events(n, spec, options, [&](AccessEvent ev) {
                engine.touch(ev);
                ++events;
            });
            return finish(engine, events);
        },
        any);
}

}  // namespace tilecache
