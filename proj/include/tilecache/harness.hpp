#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tilecache/bounds.hpp"
#include "tilecache/simulate.hpp"
#include "tilecache/trace.hpp"

namespace tilecache {

// Sorted by name so rows come out as lfu, lru, pinned-lru.
enum class Policy : std::uint8_t { Lfu, Lru, PinnedLru };

std::string_view to_string(Policy policy);
Policy parse_policy(std::string_view text);
std::vector<Policy> parse_policy_list(std::string_view comma_list);

enum class LruBackend : std::uint8_t { Scan, Fast };
LruBackend parse_backend(std::string_view text);  // "scan" | "fast"

// The engine a policy replays on.
Engine engine_for(Policy policy, LruBackend backend);

enum class SweepAxis : std::uint8_t { N, Bk, B };
std::string_view to_string(SweepAxis axis);
SweepAxis parse_axis(std::string_view text);

enum class OutputFormat : std::uint8_t { Csv, Json };
OutputFormat parse_format(std::string_view text);

struct SweepRange {
    std::int32_t start = 1;
    std::int32_t stop = 1;  // inclusive
    std::int32_t step = 1;

    std::vector<std::int32_t> values() const;
};

// "<start>:<stop>:<step>" or "<start>:<stop>" (step 1); stop is inclusive.
SweepRange parse_range(std::string_view text);

struct ExperimentConfig {
    std::int32_t capacity = 220;
    std::vector<Policy> policies{Policy::Lru};
    LruBackend backend = LruBackend::Fast;
    SweepAxis axis = SweepAxis::N;
    SweepRange range;
    // Fixed dimensions; the swept one is overwritten per row (axis b sets bi = bj).
    std::int32_t n = 120;
    std::int32_t bi = 1;
    std::int32_t bj = 1;
    std::int32_t bk = 1;
    PinPlacement placement = PinPlacement::AfterKb;
    OutputFormat format = OutputFormat::Csv;
    unsigned threads = 1;
};

// Throws ConfigError on an empty, nonpositive or descending range, an empty
// policy set, or M < 1.
void validate(const ExperimentConfig& config);

struct SweepRow {
    std::int32_t axis_value = 0;
    Policy policy = Policy::Lru;
    std::int32_t n = 0;
    std::int32_t bi = 0;
    std::int32_t bj = 0;
    std::int32_t bk = 0;
    std::int32_t capacity = 0;
    std::uint64_t reads = 0;
    std::uint64_t writes = 0;
    std::uint64_t io = 0;
    double olivry = 0.0;
    double hong_kung = 0.0;
    double predicted_io = 0.0;  // blocked_io(n, bi, bj)
    double normalized = 0.0;    // io / olivry; NaN when olivry <= 0
    // bi*bk + bi*bj + bj*bk <= M, and the strides are valid for n.
    bool feasible = true;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<std::string> warnings;
};

// One row per (swept value, policy), ordered by swept value then policy.
// Rows whose tiles overflow M are still simulated and flagged infeasible;
// rows whose strides exceed n are emitted with zero counters.
SweepResult run_sweep(const ExperimentConfig& config);

// Evaluates one row's configuration (used by run_sweep and the CLI).
SweepRow evaluate_row(std::int32_t n, const BlockSpec& spec, std::int32_t capacity, Policy policy,
                      LruBackend backend, PinPlacement placement = PinPlacement::AfterKb);

inline constexpr std::string_view kSweepCsvHeader =
    "axis_value,policy,n,bi,bj,bk,M,reads,writes,io,olivry,hong_kung,predicted_io,normalized,feasible";

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_json(std::ostream& out, const std::vector<SweepRow>& rows);

// Locale-independent shortest round-trip formatting; "nan" for NaN.
std::string format_double(double value);

// ---------------------------------------------------------------------------

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SelftestReport {
    std::vector<CheckResult> checks;

    bool ok() const;
};

SelftestReport selftest(std::uint64_t seed = 20240601);

// Bound reports for cubic, rect and alpha (alpha defaults to 1).
std::vector<BoundsReport> report_bounds(std::int64_t n, std::int64_t capacity,
                                        std::optional<std::int64_t> alpha = std::nullopt);
std::string to_json(const std::vector<BoundsReport>& reports);

struct TimingRow {
    std::int32_t capacity = 0;
    Engine engine = Engine::LruFast;
    std::uint64_t events = 0;
    double seconds = 0.0;
    double ratio = 1.0;  // seconds / seconds of the first capacity
};

// Times a full replay of the (1,1,1) trace for each capacity, best of
// `repeats` runs.
std::vector<TimingRow> timing_probe(const std::vector<std::int32_t>& capacities, std::int32_t n,
                                    Engine engine, int repeats = 3);

struct KernelTiming {
    std::int32_t n = 0;
    BlockSpec blocked;
    double naive_seconds = 0.0;
    double blocked_seconds = 0.0;
    double ratio = 0.0;  // blocked / naive
};

KernelTiming kernel_timing(std::int32_t n, const BlockSpec& blocked);

}  // namespace tilecache
