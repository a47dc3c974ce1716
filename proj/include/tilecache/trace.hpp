#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "tilecache/error.hpp"

namespace tilecache {

using EntryId = std::int32_t;

enum class Role : std::uint8_t { A = 0, B = 1, C = 2 };

// Maps matrix entries onto one flat id space [0, 3n^2):
//   id(role, i, j) = role * n^2 + n * j + i
// so A occupies [0, n^2), B [n^2, 2n^2) and C [2n^2, 3n^2).
class IdScheme {
public:
    explicit IdScheme(std::int32_t n);

    std::int32_t n() const { return n_; }
    EntryId base(Role role) const { return static_cast<EntryId>(role) * n_ * n_; }
    EntryId id(Role role, std::int32_t i, std::int32_t j) const {
        return base(role) + n_ * j + i;
    }
    EntryId space() const { return 3 * n_ * n_; }
    bool contains(EntryId id) const { return id >= 0 && id < space(); }
    Role role_of(EntryId id) const { return static_cast<Role>(id / (n_ * n_)); }

    // Largest n whose id space fits in EntryId.
    static constexpr std::int32_t kMaxDimension = 26'754;

private:
    std::int32_t n_;
};

IdScheme assign_ids(std::int32_t n);

struct BlockSpec {
    std::int32_t bi = 1;
    std::int32_t bj = 1;
    std::int32_t bk = 1;

    bool valid_for(std::int32_t n) const {
        return bi >= 1 && bj >= 1 && bk >= 1 && bi <= n && bj <= n && bk <= n;
    }
    friend bool operator==(const BlockSpec&, const BlockSpec&) = default;
};

// Throws ConfigError unless 1 <= bi, bj, bk <= n.
void validate(const BlockSpec& spec, std::int32_t n);

struct AccessEvent {
    EntryId id = 0;
    bool write = false;

    friend bool operator==(const AccessEvent&, const AccessEvent&) = default;
};

// Where the explicit-control C-block re-touch goes in the loop nest.
enum class PinPlacement : std::uint8_t {
    AfterKb,  // after every completion of the innermost kb loop
    AfterK,   // once per k block, after the ib/jb loops finish
};

struct TraceOptions {
    bool pinned = false;
    PinPlacement placement = PinPlacement::AfterKb;
};

struct TraceMeta {
    std::int32_t n = 0;
    std::optional<BlockSpec> spec;  // unknown for imported traces
    bool pinned = false;
};

struct AccessTrace {
    TraceMeta meta;
    std::vector<AccessEvent> events;

    std::size_t size() const { return events.size(); }
};

std::string_view to_string(PinPlacement placement);
PinPlacement parse_pin_placement(std::string_view text);

// Walks the six-loop blocked nest and hands every access to `sink` in trace
// order: (A[ib][kb], 0), (B[kb][jb], 0), (C[ib][jb], 1) per innermost
// iteration, plus the C-block re-touches when `options.pinned` is set.
// Large configurations are replayed through this without materializing.
template <class Sink>
void emit_events(std::int32_t n, const BlockSpec& spec, const TraceOptions& options,
                 Sink&& sink) {
    validate(spec, n);
    const IdScheme ids(n);
    const EntryId a_base = ids.base(Role::A);
    const EntryId b_base = ids.base(Role::B);
    const EntryId c_base = ids.base(Role::C);

    auto touch_block = [&](std::int32_t i, std::int32_t j) {
        for (std::int32_t ib1 = i; ib1 < i + spec.bi && ib1 < n; ++ib1)
            for (std::int32_t jb1 = j; jb1 < j + spec.bj && jb1 < n; ++jb1)
                sink(AccessEvent{c_base + n * jb1 + ib1, true});
    };
    const bool pin_after_kb = options.pinned && options.placement == PinPlacement::AfterKb;
    const bool pin_after_k = options.pinned && options.placement == PinPlacement::AfterK;

    for (std::int32_t i = 0; i < n; i += spec.bi)
        for (std::int32_t j = 0; j < n; j += spec.bj)
            for (std::int32_t k = 0; k < n; k += spec.bk) {
                for (std::int32_t ib = i; ib < i + spec.bi && ib < n; ++ib)
                    for (std::int32_t jb = j; jb < j + spec.bj && jb < n; ++jb) {
                        for (std::int32_t kb = k; kb < k + spec.bk && kb < n; ++kb) {
                            sink(AccessEvent{a_base + n * kb + ib, false});
                            sink(AccessEvent{b_base + n * jb + kb, false});
                            sink(AccessEvent{c_base + n * jb + ib, true});
                        }
                        if (pin_after_kb) touch_block(i, j);
                    }
                if (pin_after_k) touch_block(i, j);
            }
}

// Number of events emit_events produces, counted without generating them.
std::uint64_t event_count(std::int32_t n, const BlockSpec& spec, const TraceOptions& options = {});

AccessTrace generate_trace(std::int32_t n, const BlockSpec& spec);
AccessTrace generate_pinned_trace(std::int32_t n, const BlockSpec& spec,
                                  PinPlacement placement = PinPlacement::AfterKb);

}  // namespace tilecache
