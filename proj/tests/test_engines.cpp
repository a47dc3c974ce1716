#include <algorithm>
#include <random>

#include "doctest.h"

#include "reference_caches.hpp"
#include "tilecache/engines.hpp"
#include "tilecache/simulate.hpp"
#include "tilecache/worked_examples.hpp"

using namespace tilecache;
using tilecache::testing::RefLfu;
using tilecache::testing::RefLru;
using tilecache::testing::random_trace;

namespace {

Counters as_counters(const tilecache::testing::RefCounts& c) { return {c.reads, c.writes}; }

// Reference LRU counters after every event (no flush).
std::vector<Counters> reference_prefix(const AccessTrace& trace, std::size_t capacity) {
    RefLru ref(capacity);
    std::vector<Counters> out;
    for (const auto& ev : trace.events) {
        ref.touch(ev);
        out.push_back(as_counters(ref.counts));
    }
    return out;
}

SimResult reference_lru(const AccessTrace& trace, std::size_t capacity) {
    RefLru ref(capacity);
    for (const auto& ev : trace.events) ref.touch(ev);
    ref.flush();
    return {ref.counts.reads, ref.counts.writes, ref.counts.reads + ref.counts.writes,
            trace.size()};
}

SimResult reference_lfu(const AccessTrace& trace, std::size_t capacity) {
    RefLfu ref(capacity);
    for (const auto& ev : trace.events) ref.touch(ev);
    ref.flush();
    return {ref.counts.reads, ref.counts.writes, ref.counts.reads + ref.counts.writes,
            trace.size()};
}

FastCacheState fresh_fast(std::int32_t m, EntryId space) { return FastLru(m, space).state(); }

}  // namespace

TEST_CASE("new state: stamps 0..M-1, clock at M, empty") {
    ScanLru scan(12);
    for (int p = 0; p < 12; ++p) {
        CHECK(scan.state().timestamps[p] == static_cast<std::uint64_t>(p));
        CHECK(scan.state().resident[p] == kEmpty);
        CHECK(scan.state().dirty[p] == 0);
    }
    CHECK(scan.state().time == 12);
    CHECK(scan.counters() == Counters{0, 0});

    const FastCacheState one = fresh_fast(1, 3);
    CHECK(one.timestamps == std::vector<std::uint64_t>{0});
    CHECK(one.oldest == 0);
    CHECK(one.youngest == 0);

    const FastCacheState six = fresh_fast(6, 12);
    CHECK(six.index_in_cache == std::vector<Slot>(12, -1));
    CHECK(six.oldest == 0);
    CHECK(six.youngest == 5);
    CHECK_FALSE(check_invariants(six).has_value());

    LfuCache lfu(4, 12);
    CHECK(lfu.state().time == 4);

    CHECK_THROWS_AS(ScanLru(0), ConfigError);
    CHECK_THROWS_AS(FastLru(0, 12), ConfigError);
    CHECK_THROWS_AS(LfuCache(-1, 12), ConfigError);
}

TEST_CASE("scan engine reproduces the n=4, M=12 replay table") {
    const AccessTrace trace = generate_trace(worked::kTableN, {1, 1, 1});
    ScanLru scan(worked::kTableCapacity);
    FastLru fast(worked::kTableCapacity, 3 * worked::kTableN * worked::kTableN);
    std::uint64_t done = 0;
    for (const auto& row : worked::lru_table()) {
        for (; done < row.event; ++done) {
            scan.touch(trace.events[done]);
            fast.touch(trace.events[done]);
        }
        CAPTURE(row.event);
        CHECK(scan.counters() == Counters{row.reads, row.writes});
        CHECK(fast.counters() == Counters{row.reads, row.writes});
        for (int p = 0; p < worked::kTableCapacity; ++p) {
            CHECK(scan.state().resident[p] == worked::entry_from_name(row.slots[p]));
            CHECK(scan.state().timestamps[p] == row.stamps[p]);
            CHECK(fast.state().id_array[p] == worked::entry_from_name(row.slots[p]));
            CHECK(fast.state().timestamps[p] == row.stamps[p]);
        }
    }
}

TEST_CASE("scan touch examples") {
    ScanLru scan(12);
    const IdScheme ids(4);
    scan.touch({ids.id(Role::A, 0, 0), false});
    scan.touch({ids.id(Role::B, 0, 0), false});
    scan.touch({ids.id(Role::C, 0, 0), true});
    CHECK(scan.counters() == Counters{3, 0});
    CHECK(scan.state().timestamps[0] == 12);
    CHECK(scan.state().timestamps[1] == 13);
    CHECK(scan.state().timestamps[2] == 14);

    scan.touch({ids.id(Role::A, 0, 1), false});
    scan.touch({ids.id(Role::B, 1, 0), false});
    scan.touch({ids.id(Role::C, 0, 0), true});
    CHECK(scan.counters() == Counters{5, 0});
    CHECK(scan.state().timestamps[2] == 17);
    CHECK(scan.last_inspections() == 12);

    scan.touch({ids.id(Role::A, 3, 3), false});
    CHECK(scan.last_inspections() == 24);
}

TEST_CASE("scan dirty bit is assigned on a hit") {
    ScanLru scan(2);
    scan.touch({5, true});
    scan.touch({5, false});
    CHECK(scan.state().dirty[0] == 0);
    CHECK(scan.flush() == 0);
}

TEST_CASE("checkpoints along the n=4, M=12 replay") {
    const AccessTrace trace = generate_trace(4, {1, 1, 1});
    const auto expected = reference_prefix(trace, 12);
    for (Engine engine : {Engine::LruScan, Engine::LruFast}) {
        std::vector<Counters> seen;
        simulate(trace, 12, engine, [&](std::uint64_t idx, std::uint64_t r, std::uint64_t w) {
            CHECK(idx == seen.size() + 1);
            seen.push_back({r, w});
        });
        REQUIRE(seen.size() == trace.size());
        CHECK(seen == expected);
        CHECK(seen[2] == Counters{3, 0});
        CHECK(seen[11] == Counters{9, 0});
        CHECK(seen[14] == Counters{11, 0});
        CHECK(seen[32] == Counters{18, 1});
        CHECK(seen[47] == Counters{24, 2});
        CHECK(seen[50] == Counters{27, 3});
        CHECK(seen[59] == Counters{33, 3});
        CHECK(seen[62] == Counters{35, 3});
        CHECK(seen[64] == Counters{36, 4});
    }
}

TEST_CASE("fast engine transition on the n=2, M=6 example") {
    const FastCacheState before = worked::fast_example_before();
    REQUIRE_FALSE(check_invariants(before).has_value());
    FastLru fast = FastLru::from_state(before);
    fast.touch({worked::kFastExampleId, true});
    const FastCacheState& s = fast.state();
    const FastCacheState after = worked::fast_example_after();
    CHECK(s.id_array == std::vector<EntryId>{0, 10, 8, 2, 5, 6});
    CHECK(s.timestamps == std::vector<std::uint64_t>{12, 14, 11, 9, 10, 13});
    CHECK(s.next_younger == std::vector<Slot>{5, -1, 0, 4, 2, 1});
    CHECK(s.next_older == std::vector<Slot>{2, 5, 4, -1, 3, 0});
    CHECK(s.index_in_cache == std::vector<Slot>{0, -1, 3, -1, -1, 4, 5, -1, 2, -1, 1, -1});
    CHECK(s.oldest == 3);
    CHECK(s.youngest == 1);
    CHECK(s.id_array == after.id_array);
    CHECK(s.write_or_no == after.write_or_no);
    CHECK(s.global_time == after.global_time);
    CHECK(fast.counters() == Counters{1, 0});
    CHECK_FALSE(check_invariants(s).has_value());
}

TEST_CASE("fast engine hit cases") {
    const FastCacheState before = worked::fast_example_before();

    SUBCASE("youngest hit leaves the chain alone") {
        FastLru fast = FastLru::from_state(before);
        fast.touch({6, false});  // slot 5 is youngest
        CHECK(fast.state().next_younger == before.next_younger);
        CHECK(fast.state().next_older == before.next_older);
        CHECK(fast.state().timestamps[5] == 14);
        CHECK(fast.counters() == Counters{0, 0});
        CHECK_FALSE(check_invariants(fast.state()).has_value());
    }
    SUBCASE("oldest hit moves the head to the tail") {
        FastLru fast = FastLru::from_state(before);
        fast.touch({4, false});  // slot 1 is oldest
        CHECK(fast.state().oldest == 3);
        CHECK(fast.state().youngest == 1);
        CHECK(fast.state().next_younger[5] == 1);
        CHECK(fast.counters() == Counters{0, 0});
        CHECK_FALSE(check_invariants(fast.state()).has_value());
    }
    SUBCASE("interior hit splices neighbours") {
        FastLru fast = FastLru::from_state(before);
        fast.touch({5, true});  // slot 4, between slots 3 and 2
        CHECK(fast.state().next_younger[3] == 2);
        CHECK(fast.state().next_older[2] == 3);
        CHECK(fast.state().youngest == 4);
        CHECK(fast.state().write_or_no[4] == 1);
        CHECK(fast.last_updates() <= 16);
        CHECK_FALSE(check_invariants(fast.state()).has_value());
    }
}

TEST_CASE("check_invariants catches broken states") {
    FastCacheState s = worked::fast_example_before();
    SUBCASE("chain") { s.next_younger[2] = 3; }
    SUBCASE("reverse chain") { s.next_older[0] = 4; }
    SUBCASE("stamps") { s.timestamps[5] = 1; }
    SUBCASE("clock") { s.global_time = 13; }
    SUBCASE("reverse index") { s.index_in_cache[4] = 2; }
    SUBCASE("stale index") { s.index_in_cache[1] = 3; }
    CHECK(check_invariants(s).has_value());
    CHECK_THROWS_AS(FastLru::from_state(s), ConfigError);
}

TEST_CASE("fast engine audit after every touch and bounded work") {
    std::mt19937_64 rng(99);
    for (std::int32_t m : {1, 2, 3, 5, 12, 64}) {
        const AccessTrace trace = random_trace(rng, 4, 3000);
        FastLru fast(m, 48);
        std::uint32_t worst = 0;
        for (const auto& ev : trace.events) {
            fast.touch(ev);
            worst = std::max(worst, fast.last_updates());
            const auto problem = check_invariants(fast.state());
            REQUIRE_MESSAGE(!problem, *problem);
        }
        CAPTURE(m);
        CHECK(worst <= 16);
    }
}

TEST_CASE("M = 1 keeps a single slot") {
    const AccessTrace trace = generate_trace(2, {1, 1, 1});
    const SimResult expected = reference_lru(trace, 1);
    CHECK(simulate(trace, 1, Engine::LruScan) == expected);
    CHECK(simulate(trace, 1, Engine::LruFast) == expected);
    CHECK(expected.reads == trace.size());
}

TEST_CASE("LFU examples") {
    SUBCASE("least frequent entry is replaced") {
        // a:1 b:2 c:3 d:4 uses, then insert e.
        LfuCache lfu(4, 12);
        for (EntryId id = 0; id < 4; ++id)
            for (EntryId u = 0; u <= id; ++u) lfu.touch({id, false});
        lfu.touch({4, false});
        const auto& s = lfu.state();
        CHECK(s.resident[0] == 4);
        CHECK(s.frequency[0] == 1);
        CHECK(s.frequency[3] == 4);
        CHECK(lfu.counters() == Counters{5, 0});
    }
    SUBCASE("frequency ties go to the oldest stamp") {
        LfuCacheState st;
        st.resident = {7, 8};
        st.frequency = {1, 1};
        st.timestamps = {9, 5};
        st.dirty = {0, 1};
        st.time = 10;
        LfuCache lfu = LfuCache::from_state(st, 12);
        lfu.touch({3, false});
        CHECK(lfu.state().resident == std::vector<EntryId>{7, 3});
        CHECK(lfu.counters() == Counters{1, 1});
    }
    SUBCASE("hits cost nothing") {
        LfuCache lfu(3, 12);
        lfu.touch({1, true});
        const Counters before = lfu.counters();
        lfu.touch({1, true});
        CHECK(lfu.counters() == before);
        CHECK(lfu.state().frequency[0] == 2);
    }
    SUBCASE("eviction forgets the count") {
        LfuCache lfu(1, 12);
        lfu.touch({1, false});
        lfu.touch({1, false});
        lfu.touch({2, false});
        lfu.touch({1, false});
        CHECK(lfu.state().frequency[0] == 1);
    }
}

TEST_CASE("flush examples") {
    ScanLru empty(4);
    CHECK(empty.flush() == 0);

    FastLru three(5, 12);
    for (EntryId id : {1, 2, 3}) three.touch({id, true});
    three.touch({4, false});
    CHECK(three.flush() == 3);

    const AccessTrace trace = generate_trace(2, {1, 1, 1});
    for (Engine engine : {Engine::LruScan, Engine::LruFast, Engine::Lfu}) {
        std::uint64_t writes_before_flush = 0;
        const SimResult r = simulate(trace, 12, engine, [&](std::uint64_t, std::uint64_t, std::uint64_t w) {
            writes_before_flush = w;
        });
        CHECK(writes_before_flush == 0);
        CHECK(r == SimResult{12, 4, 16, 24});
    }
}

TEST_CASE("counters are monotone and io = reads + writes") {
    const AccessTrace trace = generate_pinned_trace(6, {2, 3, 2});
    for (Engine engine : {Engine::LruScan, Engine::LruFast, Engine::Lfu}) {
        Counters last;
        simulate(trace, 10, engine, [&](std::uint64_t, std::uint64_t r, std::uint64_t w) {
            CHECK(r >= last.reads);
            CHECK(w >= last.writes);
            last = {r, w};
        });
        const SimResult res = simulate(trace, 10, engine);
        CHECK(res.io == res.reads + res.writes);
        CHECK(res.reads <= res.events);
        CHECK(res.writes <= res.reads + 10);
    }
}

TEST_CASE("simulate rejects ids outside the trace's id space") {
    AccessTrace trace;
    trace.meta.n = 2;
    trace.events = {{0, false}, {12, true}};
    CHECK_THROWS_AS(simulate(trace, 4, Engine::LruFast), TraceError);
    trace.events = {{-1, false}};
    CHECK_THROWS_AS(simulate(trace, 4, Engine::LruScan), TraceError);
    CHECK_THROWS_AS(simulate(generate_trace(2, {1, 1, 1}), 0, Engine::Lfu), ConfigError);
    CHECK(parse_engine("lru-scan") == Engine::LruScan);
    CHECK(to_string(Engine::Lfu) == "lfu");
    CHECK_THROWS_AS(parse_engine("fifo"), ConfigError);
}

TEST_CASE("reads equal misses") {
    std::mt19937_64 rng(5);
    const AccessTrace trace = random_trace(rng, 3, 2000);
    for (std::int32_t m : {1, 4, 9}) {
        // Count misses with an explicit resident set driven by the fast engine's index.
        FastLru fast(m, 27);
        std::uint64_t misses = 0;
        for (const auto& ev : trace.events) {
            if (fast.state().index_in_cache[ev.id] < 0) ++misses;
            fast.touch(ev);
        }
        CHECK(fast.counters().reads == misses);
    }
}

TEST_CASE("saturated capacity faults each entry once") {
    for (std::int32_t n = 1; n <= 5; ++n) {
        const std::int32_t m = 3 * n * n;
        for (const BlockSpec spec : {BlockSpec{1, 1, 1}, BlockSpec{n, 1, n}, BlockSpec{1, n, 1}}) {
            const AccessTrace trace = generate_trace(n, spec);
            for (Engine engine : {Engine::LruScan, Engine::LruFast}) {
                for (std::int32_t cap : {m, m + 7}) {
                    const SimResult r = simulate(trace, cap, engine);
                    CHECK(r.reads == static_cast<std::uint64_t>(m));
                    CHECK(r.writes == static_cast<std::uint64_t>(n) * n);
                }
            }
        }
    }
}

TEST_CASE("engines agree with the reference caches on random traces") {
    std::mt19937_64 rng(20240601);
    for (int round = 0; round < 120; ++round) {
        const int n = std::uniform_int_distribution<int>(1, 8)(rng);
        const std::size_t len = std::uniform_int_distribution<std::size_t>(0, 4000)(rng);
        const AccessTrace trace = random_trace(rng, n, len);
        for (std::int32_t m : {1, 2, 3, 5, 12, 64}) {
            const SimResult lru = reference_lru(trace, m);
            CHECK(simulate(trace, m, Engine::LruScan) == lru);
            CHECK(simulate(trace, m, Engine::LruFast) == lru);
            CHECK(simulate(trace, m, Engine::Lfu) == reference_lfu(trace, m));
        }
    }
}

TEST_CASE("engines agree on generated traces") {
    for (std::int32_t n = 1; n <= 6; ++n)
        for (int bi = 1; bi <= n; ++bi)
            for (int bk = 1; bk <= n; ++bk) {
                const BlockSpec spec{bi, std::max(1, n - bi + 1), bk};
                for (const AccessTrace& trace : {generate_trace(n, spec), generate_pinned_trace(n, spec)})
                    for (std::int32_t m : {1, 2, 3, 5, 12, 64}) {
                        const SimResult fast = simulate(trace, m, Engine::LruFast);
                        CHECK(simulate(trace, m, Engine::LruScan) == fast);
                        CHECK(reference_lru(trace, m) == fast);
                        CHECK(simulate(trace, m, Engine::Lfu) == reference_lfu(trace, m));
                    }
            }
}

TEST_CASE("pinning does not hurt on n=8, M=24, (2,2,1)") {
    const SimResult plain = simulate(generate_trace(8, {2, 2, 1}), 24, Engine::LruFast);
    const SimResult pinned = simulate(generate_pinned_trace(8, {2, 2, 1}), 24, Engine::LruFast);
    CHECK(pinned.io <= plain.io);
}

TEST_CASE("streamed replay matches the materialized trace") {
    for (Engine engine : {Engine::LruScan, Engine::LruFast, Engine::Lfu})
        for (bool pinned : {false, true})
            for (const BlockSpec spec : {BlockSpec{1, 1, 1}, BlockSpec{3, 2, 4}, BlockSpec{7, 7, 7}}) {
                const AccessTrace trace = pinned ? generate_pinned_trace(7, spec) : generate_trace(7, spec);
                CHECK(simulate_generated(7, spec, {pinned, PinPlacement::AfterKb}, 11, engine) ==
                      simulate(trace, 11, engine));
            }
}
