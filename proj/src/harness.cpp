#include "tilecache/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include "json.hpp"

#include "tilecache/kernel.hpp"

namespace tilecache {

std::string_view to_string(Policy policy) {
    switch (policy) {
        case Policy::Lfu: return "lfu";
        case Policy::Lru: return "lru";
        case Policy::PinnedLru: return "pinned-lru";
    }
    return "?";
}

Policy parse_policy(std::string_view text) {
    if (text == "lfu") return Policy::Lfu;
    if (text == "lru") return Policy::Lru;
    if (text == "pinned-lru") return Policy::PinnedLru;
    throw ConfigError("unknown policy '" + std::string(text) + "' (expected lru, lfu or pinned-lru)");
}

std::vector<Policy> parse_policy_list(std::string_view comma_list) {
    std::vector<Policy> out;
    while (!comma_list.empty()) {
        const auto comma = comma_list.find(',');
        const auto item = comma_list.substr(0, comma);
        const Policy p = parse_policy(item);
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
        if (comma == std::string_view::npos) break;
        comma_list.remove_prefix(comma + 1);
    }
    if (out.empty()) throw ConfigError("empty policy list");
    std::sort(out.begin(), out.end());
    return out;
}

LruBackend parse_backend(std::string_view text) {
    if (text == "scan") return LruBackend::Scan;
    if (text == "fast") return LruBackend::Fast;
    throw ConfigError("unknown engine '" + std::string(text) + "' (expected scan or fast)");
}

Engine engine_for(Policy policy, LruBackend backend) {
    if (policy == Policy::Lfu) return Engine::Lfu;
    return backend == LruBackend::Scan ? Engine::LruScan : Engine::LruFast;
}

std::string_view to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::N: return "n";
        case SweepAxis::Bk: return "bk";
        case SweepAxis::B: return "b";
    }
    return "?";
}

SweepAxis parse_axis(std::string_view text) {
    if (text == "n") return SweepAxis::N;
    if (text == "bk") return SweepAxis::Bk;
    if (text == "b") return SweepAxis::B;
    throw ConfigError("unknown sweep axis '" + std::string(text) + "' (expected n, bk or b)");
}

OutputFormat parse_format(std::string_view text) {
    if (text == "csv") return OutputFormat::Csv;
    if (text == "json") return OutputFormat::Json;
    throw ConfigError("unknown format '" + std::string(text) + "' (expected csv or json)");
}

std::vector<std::int32_t> SweepRange::values() const {
    std::vector<std::int32_t> out;
    for (std::int64_t v = start; v <= stop; v += step) out.push_back(static_cast<std::int32_t>(v));
    return out;
}

namespace {

void check_range(const SweepRange& r) {
    if (r.start < 1 || r.step < 1 || r.stop < r.start)
        throw ConfigError("sweep range must be positive, ascending and nonempty");
}

}  // namespace

SweepRange parse_range(std::string_view text) {
    SweepRange r;
    std::int32_t* fields[] = {&r.start, &r.stop, &r.step};
    std::size_t count = 0;
    while (count < 3) {
        const auto colon = text.find(':');
        const auto item = text.substr(0, colon);
        const auto* end = item.data() + item.size();
        auto [ptr, ec] = std::from_chars(item.data(), end, *fields[count]);
        if (ec != std::errc{} || ptr != end || item.empty())
            throw ConfigError("bad range '" + std::string(text) + "' (expected start:stop[:step])");
        ++count;
        if (colon == std::string_view::npos) break;
        text.remove_prefix(colon + 1);
        if (count == 3) throw ConfigError("bad range: too many fields");
    }
    if (count < 2) throw ConfigError("bad range: expected start:stop[:step]");
    check_range(r);
    return r;
}

void validate(const ExperimentConfig& c) {
    if (c.capacity < 1) throw ConfigError("cache capacity must be >= 1");
    if (c.policies.empty()) throw ConfigError("policy set is empty");
    check_range(c.range);
    if (c.threads < 1) throw ConfigError("threads must be >= 1");
    auto positive = [](std::int32_t v, const char* name) {
        if (v < 1) throw ConfigError(std::string(name) + " must be >= 1");
    };
    if (c.axis != SweepAxis::N) positive(c.n, "n");
    if (c.axis != SweepAxis::B) {
        positive(c.bi, "bi");
        positive(c.bj, "bj");
    }
    if (c.axis != SweepAxis::Bk) positive(c.bk, "bk");
}

SweepRow evaluate_row(std::int32_t n, const BlockSpec& spec, std::int32_t capacity, Policy policy,
                      LruBackend backend, PinPlacement placement) {
    SweepRow row;
    row.policy = policy;
    row.n = n;
    row.bi = spec.bi;
    row.bj = spec.bj;
    row.bk = spec.bk;
    row.capacity = capacity;
    row.olivry = olivry_bound(n, capacity);
    row.hong_kung = hong_kung_bound(n, n, n, capacity);
    row.predicted_io = blocked_io(n, spec.bi, spec.bj);

    const std::int64_t footprint = std::int64_t{spec.bi} * spec.bk + std::int64_t{spec.bi} * spec.bj +
                                   std::int64_t{spec.bj} * spec.bk;
    row.feasible = spec.valid_for(n) && footprint <= capacity;

    if (spec.valid_for(n)) {
        const TraceOptions options{policy == Policy::PinnedLru, placement};
        const SimResult sim = simulate_generated(n, spec, options, capacity, engine_for(policy, backend));
        row.reads = sim.reads;
        row.writes = sim.writes;
        row.io = sim.io;
    }
    row.normalized = row.olivry > 0.0 && spec.valid_for(n)
                         ? static_cast<double>(row.io) / row.olivry
                         : std::numeric_limits<double>::quiet_NaN();
    return row;
}

SweepResult run_sweep(const ExperimentConfig& config) {
    validate(config);
    std::vector<Policy> policies = config.policies;
    std::sort(policies.begin(), policies.end());

    struct Job {
        std::int32_t value;
        std::int32_t n;
        BlockSpec spec;
        Policy policy;
    };
    std::vector<Job> jobs;
    SweepResult result;
    for (std::int32_t v : config.range.values()) {
        std::int32_t n = config.n;
        BlockSpec spec{config.bi, config.bj, config.bk};
        switch (config.axis) {
            case SweepAxis::N: n = v; break;
            case SweepAxis::Bk: spec.bk = v; break;
            case SweepAxis::B: spec.bi = spec.bj = v; break;
        }
        if (!spec.valid_for(n)) {
            result.warnings.push_back(std::string(to_string(config.axis)) + "=" + std::to_string(v) +
                                      ": strides exceed n=" + std::to_string(n) + ", row not simulated");
        } else if (n % spec.bi != 0 || n % spec.bj != 0 || n % spec.bk != 0) {
            result.warnings.push_back(std::string(to_string(config.axis)) + "=" + std::to_string(v) +
                                      ": blocks do not divide n=" + std::to_string(n) +
                                      ", predicted_io assumes they do");
        }
        for (Policy p : policies) jobs.push_back({v, n, spec, p});
    }

    // Each job owns its engine; rows land in their precomputed slot so the
    // output order does not depend on scheduling.
    result.rows.resize(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            const Job& job = jobs[i];
            SweepRow row = evaluate_row(job.n, job.spec, config.capacity, job.policy, config.backend,
                                        config.placement);
            row.axis_value = job.value;
            result.rows[i] = row;
        }
    };
    const unsigned threads = std::clamp<unsigned>(config.threads, 1, std::max<std::size_t>(jobs.size(), 1));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    return result;
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << kSweepCsvHeader << '\n';
    for (const auto& r : rows) {
        out << r.axis_value << ',' << to_string(r.policy) << ',' << r.n << ',' << r.bi << ',' << r.bj << ','
            << r.bk << ',' << r.capacity << ',' << r.reads << ',' << r.writes << ',' << r.io << ','
            << format_double(r.olivry) << ',' << format_double(r.hong_kung) << ','
            << format_double(r.predicted_io) << ',' << format_double(r.normalized) << ','
            << (r.feasible ? "true" : "false") << '\n';
    }
}

void write_json(std::ostream& out, const std::vector<SweepRow>& rows) {
    auto number = [](double v) { return std::isnan(v) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(v); };
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json j;
        j["axis_value"] = r.axis_value;
        j["policy"] = to_string(r.policy);
        j["n"] = r.n;
        j["bi"] = r.bi;
        j["bj"] = r.bj;
        j["bk"] = r.bk;
        j["M"] = r.capacity;
        j["reads"] = r.reads;
        j["writes"] = r.writes;
        j["io"] = r.io;
        j["olivry"] = number(r.olivry);
        j["hong_kung"] = number(r.hong_kung);
        j["predicted_io"] = number(r.predicted_io);
        j["normalized"] = number(r.normalized);
        j["feasible"] = r.feasible;
        arr.push_back(std::move(j));
    }
    out << arr.dump(2) << '\n';
}

// ---------------------------------------------------------------------------

std::vector<BoundsReport> report_bounds(std::int64_t n, std::int64_t capacity, std::optional<std::int64_t> alpha) {
    if (n < 1 || capacity < 1) throw ConfigError("bounds: n and M must be >= 1");
    return {
        make_bounds_report(n, capacity, TileShape::cubic()),
        make_bounds_report(n, capacity, TileShape::rect()),
        make_bounds_report(n, capacity, TileShape::with_alpha(alpha.value_or(1))),
    };
}

std::string to_json(const std::vector<BoundsReport>& reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(nlohmann::ordered_json::parse(to_json(r)));
    return arr.dump(2);
}

std::vector<TimingRow> timing_probe(const std::vector<std::int32_t>& capacities, std::int32_t n, Engine engine,
                                    int repeats) {
    if (capacities.empty()) throw ConfigError("timing_probe: no capacities");
    if (!std::is_sorted(capacities.begin(), capacities.end()))
        throw ConfigError("timing_probe: capacities must be ascending");
    const AccessTrace trace = generate_trace(n, BlockSpec{1, 1, 1});
    std::vector<TimingRow> rows;
    for (std::int32_t m : capacities) {
        TimingRow row;
        row.capacity = m;
        row.engine = engine;
        row.seconds = std::numeric_limits<double>::infinity();
        for (int r = 0; r < std::max(repeats, 1); ++r) {
            const auto start = std::chrono::steady_clock::now();
            const SimResult sim = simulate(trace, m, engine);
            const auto stop = std::chrono::steady_clock::now();
            row.events = sim.events;
            row.seconds = std::min(row.seconds, std::chrono::duration<double>(stop - start).count());
        }
        rows.push_back(row);
    }
    for (auto& row : rows) row.ratio = row.seconds / rows.front().seconds;
    return rows;
}

KernelTiming kernel_timing(std::int32_t n, const BlockSpec& blocked) {
    KernelTiming t;
    t.n = n;
    t.blocked = blocked;
    t.naive_seconds = time_matmul(n, BlockSpec{1, 1, 1});
    t.blocked_seconds = time_matmul(n, blocked);
    t.ratio = t.blocked_seconds / t.naive_seconds;
    return t;
}

}  // namespace tilecache
