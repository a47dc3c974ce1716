#include "tilecache/trace.hpp"

#include <algorithm>
#include <string>

namespace tilecache {

IdScheme::IdScheme(std::int32_t n) : n_(n) {
    if (n < 1) throw ConfigError("invalid dimension: n must be >= 1, got " + std::to_string(n));
    if (n > kMaxDimension)
        throw ConfigError("invalid dimension: n=" + std::to_string(n) + " overflows the id space");
}

IdScheme assign_ids(std::int32_t n) { return IdScheme(n); }

void validate(const BlockSpec& spec, std::int32_t n) {
    if (n < 1) throw ConfigError("invalid dimension: n must be >= 1, got " + std::to_string(n));
    if (!spec.valid_for(n)) {
        throw ConfigError("invalid block spec (" + std::to_string(spec.bi) + "," +
                          std::to_string(spec.bj) + "," + std::to_string(spec.bk) +
                          "): each stride must lie in [1, " + std::to_string(n) + "]");
    }
}

std::string_view to_string(PinPlacement placement) {
    return placement == PinPlacement::AfterKb ? "after-kb" : "after-k";
}

PinPlacement parse_pin_placement(std::string_view text) {
    if (text == "after-kb") return PinPlacement::AfterKb;
    if (text == "after-k") return PinPlacement::AfterK;
    throw ConfigError("unknown pin placement '" + std::string(text) + "'");
}

std::uint64_t event_count(std::int32_t n, const BlockSpec& spec, const TraceOptions& options) {
    validate(spec, n);
    std::uint64_t total = 0;
    for (std::int32_t i = 0; i < n; i += spec.bi) {
        const std::uint64_t si = std::min(spec.bi, n - i);
        for (std::int32_t j = 0; j < n; j += spec.bj) {
            const std::uint64_t sj = std::min(spec.bj, n - j);
            for (std::int32_t k = 0; k < n; k += spec.bk) {
                const std::uint64_t sk = std::min(spec.bk, n - k);
                total += 3 * si * sj * sk;
                if (!options.pinned) continue;
                // AfterKb: one block touch per (ib, jb) pair; AfterK: one per k block.
                total += options.placement == PinPlacement::AfterKb ? si * sj * si * sj : si * sj;
            }
        }
    }
    return total;
}

namespace {

AccessTrace build(std::int32_t n, const BlockSpec& spec, const TraceOptions& options) {
    AccessTrace trace;
    trace.meta = TraceMeta{n, spec, options.pinned};
    trace.events.reserve(event_count(n, spec, options));
    emit_events(n, spec, options, [&](AccessEvent ev) { trace.events.push_back(ev); });
    return trace;
}

}  // namespace

AccessTrace generate_trace(std::int32_t n, const BlockSpec& spec) {
    return build(n, spec, TraceOptions{});
}

AccessTrace generate_pinned_trace(std::int32_t n, const BlockSpec& spec, PinPlacement placement) {
    return build(n, spec, TraceOptions{true, placement});
}

}  // namespace tilecache
