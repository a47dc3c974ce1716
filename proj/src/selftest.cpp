#include <random>
#include <sstream>

#include "tilecache/harness.hpp"
#include "tilecache/worked_examples.hpp"

namespace tilecache {

namespace {

template <class Engine, class SlotsOf>
CheckResult replay_table(const char* name, Engine engine, SlotsOf slots_of) {
    CheckResult check{name, true, ""};
    const AccessTrace trace = generate_trace(worked::kTableN, BlockSpec{1, 1, 1});
    std::uint64_t event = 0;
    for (const auto& row : worked::lru_table()) {
        while (event < row.event) engine.touch(trace.events[event++]);
        const auto& [ids, stamps] = slots_of(engine);
        bool match = engine.counters().reads == row.reads && engine.counters().writes == row.writes;
        for (std::size_t p = 0; p < row.slots.size(); ++p)
            match = match && ids[p] == worked::entry_from_name(row.slots[p]) && stamps[p] == row.stamps[p];
        if (!match) {
            std::ostringstream os;
            os << "mismatch after event " << row.event << ": got r=" << engine.counters().reads
               << " w=" << engine.counters().writes << ", expected r=" << row.reads << " w=" << row.writes;
            return {name, false, os.str()};
        }
    }
    check.detail = std::to_string(worked::lru_table().size()) + " rows match";
    return check;
}

CheckResult fast_transition() {
    CheckResult check{"fast engine n=2/M=6 access of id 10", false, ""};
    FastLru engine = FastLru::from_state(worked::fast_example_before());
    engine.touch(AccessEvent{worked::kFastExampleId, true});
    const FastCacheState& got = engine.state();
    const FastCacheState want = worked::fast_example_after();
    check.passed = got.id_array == want.id_array && got.timestamps == want.timestamps &&
                   got.next_younger == want.next_younger && got.next_older == want.next_older &&
                   got.index_in_cache == want.index_in_cache && got.oldest == want.oldest &&
                   got.youngest == want.youngest;
    check.detail = check.passed ? "all post-arrays match" : "post-access arrays differ";
    return check;
}

CheckResult bounds_spots() {
    const auto rect = optimal_block(220, TileShape::rect());
    const auto cubic = optimal_block(220, TileShape::cubic());
    const bool ok = rect == 13 && cubic == 8;
    return {"optimal block sizes at M=220", ok,
            "rect b=" + std::to_string(rect) + " (want 13), cubic b=" + std::to_string(cubic) + " (want 8)"};
}

CheckResult random_equivalence(std::uint64_t seed) {
    constexpr int kTraces = 100;
    const std::int32_t capacities[] = {1, 2, 3, 5, 12, 64};
    std::mt19937_64 rng(seed);
    int agreed = 0;
    std::string first_failure;
    for (int t = 0; t < kTraces; ++t) {
        const auto n = static_cast<std::int32_t>(std::uniform_int_distribution<int>(1, 8)(rng));
        const std::int32_t m = capacities[std::uniform_int_distribution<int>(0, 5)(rng)];
        const auto length = std::uniform_int_distribution<int>(1, 10'000)(rng);
        AccessTrace trace;
        trace.meta.n = n;
        std::uniform_int_distribution<EntryId> id(0, 3 * n * n - 1);
        std::bernoulli_distribution write(0.5);
        for (int e = 0; e < length; ++e) trace.events.push_back({id(rng), write(rng)});
        const SimResult scan = simulate(trace, m, Engine::LruScan);
        const SimResult fast = simulate(trace, m, Engine::LruFast);
        if (scan == fast) {
            ++agreed;
        } else if (first_failure.empty()) {
            first_failure = "; trace " + std::to_string(t) + " (n=" + std::to_string(n) +
                            ", M=" + std::to_string(m) + ") disagrees";
        }
    }
    return {"scan vs fast on random traces", agreed == kTraces,
            std::to_string(agreed) + "/" + std::to_string(kTraces) + " agree" + first_failure};
}

}  // namespace

bool SelftestReport::ok() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return !checks.empty();
}

SelftestReport selftest(std::uint64_t seed) {
    SelftestReport report;
    report.checks.push_back(replay_table("n=4/M=12 LRU table, scan engine", ScanLru(worked::kTableCapacity),
                                         [](const ScanLru& e) {
                                             return std::tie(e.state().resident, e.state().timestamps);
                                         }));
    report.checks.push_back(replay_table("n=4/M=12 LRU table, fast engine",
                                         FastLru(worked::kTableCapacity, 3 * worked::kTableN * worked::kTableN),
                                         [](const FastLru& e) {
                                             return std::tie(e.state().id_array, e.state().timestamps);
                                         }));
    report.checks.push_back(fast_transition());
    report.checks.push_back(bounds_spots());
    report.checks.push_back(random_equivalence(seed));
    return report;
}

}  // namespace tilecache
