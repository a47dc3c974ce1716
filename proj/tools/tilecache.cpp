// tilecache: trace-driven cache simulation of blocked matrix multiplication.
//
//   tilecache simulate --n 64 --cache 220 --bi 13 --bj 13 --bk 1 --policy pinned-lru
//   tilecache sweep --axis b --range 11:15 --cache 220 --n 156 --bk 1 --policies lru
//   tilecache bounds --n 100 --cache 220
//   tilecache selftest
//   tilecache replay --trace t.txt --cache 12 --policy lru

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tilecache/harness.hpp"
#include "tilecache/simulate.hpp"
#include "tilecache/trace_io.hpp"

namespace {

using namespace tilecache;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailure = 2;

struct Checkpoint {
    std::uint64_t event, reads, writes;
};

struct RunContext {
    std::int32_t n = 0;
    std::optional<BlockSpec> spec;
    std::int32_t capacity = 0;
    Policy policy = Policy::Lru;
    Engine engine = Engine::LruFast;
};

void print_result(const RunContext& ctx, const SimResult& r, OutputFormat format,
                  const std::vector<Checkpoint>* checkpoints) {
    if (format == OutputFormat::Json) {
        nlohmann::ordered_json j;
        j["n"] = ctx.n;
        if (ctx.spec) {
            j["bi"] = ctx.spec->bi;
            j["bj"] = ctx.spec->bj;
            j["bk"] = ctx.spec->bk;
        }
        j["M"] = ctx.capacity;
        j["policy"] = to_string(ctx.policy);
        j["engine"] = to_string(ctx.engine);
        j["reads"] = r.reads;
        j["writes"] = r.writes;
        j["io"] = r.io;
        j["events"] = r.events;
        if (checkpoints) {
            auto rows = nlohmann::ordered_json::array();
            for (const auto& c : *checkpoints) rows.push_back({c.event, c.reads, c.writes});
            j["checkpoints"] = std::move(rows);
        }
        std::cout << j.dump(2) << '\n';
        return;
    }
    if (checkpoints) {
        std::cout << "event_index,reads,writes\n";
        for (const auto& c : *checkpoints) std::cout << c.event << ',' << c.reads << ',' << c.writes << '\n';
        std::cout << '\n';
    }
    std::cout << "n,bi,bj,bk,M,policy,engine,reads,writes,io,events\n";
    std::cout << ctx.n << ',';
    if (ctx.spec)
        std::cout << ctx.spec->bi << ',' << ctx.spec->bj << ',' << ctx.spec->bk << ',';
    else
        std::cout << ",,,";
    std::cout << ctx.capacity << ',' << to_string(ctx.policy) << ',' << to_string(ctx.engine) << ',' << r.reads
              << ',' << r.writes << ',' << r.io << ',' << r.events << '\n';
}

SimResult run_trace(const AccessTrace& trace, const RunContext& ctx, bool checkpoints,
                    std::vector<Checkpoint>& rows) {
    CounterTap tap;
    if (checkpoints)
        tap = [&rows](std::uint64_t e, std::uint64_t r, std::uint64_t w) { rows.push_back({e, r, w}); };
    return simulate(trace, ctx.capacity, ctx.engine, tap);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trace-driven cache simulator for blocked matrix multiplication"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Replay one generated trace and print its read/write counts");
    std::int32_t n = 0, capacity = 0, bi = 1, bj = 1, bk = 1;
    std::string policy = "lru", engine = "fast", format = "csv", trace_out, placement = "after-kb";
    bool checkpoints = false;
    sim->add_option("--n", n, "Matrix dimension")->required();
    sim->add_option("--cache", capacity, "Cache capacity M in entries")->required();
    sim->add_option("--bi", bi, "Block stride for i")->required();
    sim->add_option("--bj", bj, "Block stride for j")->required();
    sim->add_option("--bk", bk, "Block stride for k")->required();
    sim->add_option("--policy", policy, "lru | lfu | pinned-lru")->required();
    sim->add_option("--engine", engine, "LRU engine: scan | fast")->capture_default_str();
    sim->add_flag("--checkpoints", checkpoints, "Emit event_index,reads,writes after every event");
    sim->add_option("--trace-out", trace_out, "Also write the generated trace to this file");
    sim->add_option("--format", format, "csv | json")->capture_default_str();
    sim->add_option("--pin-placement", placement, "after-kb | after-k")->capture_default_str();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Sweep n, bk or b = bi = bj across policies");
    std::string axis, range, policies = "lru", out_path;
    std::optional<std::int32_t> fixed_n, fixed_bi, fixed_bj, fixed_bk;
    unsigned threads = 1;
    sweep->add_option("--axis", axis, "n | bk | b")->required();
    sweep->add_option("--range", range, "start:stop[:step], stop inclusive")->required();
    sweep->add_option("--cache", capacity, "Cache capacity M")->required();
    sweep->add_option("--n", fixed_n, "Fixed n (axes bk, b)");
    sweep->add_option("--bi", fixed_bi, "Fixed bi (axes n, bk)");
    sweep->add_option("--bj", fixed_bj, "Fixed bj (axes n, bk)");
    sweep->add_option("--bk", fixed_bk, "Fixed bk (axes n, b)");
    sweep->add_option("--policies", policies, "Comma list of lru, lfu, pinned-lru")->capture_default_str();
    sweep->add_option("--engine", engine, "LRU engine: scan | fast")->capture_default_str();
    sweep->add_option("--format", format, "csv | json")->capture_default_str();
    sweep->add_option("--out", out_path, "Write rows to this file instead of stdout");
    sweep->add_option("--pin-placement", placement, "after-kb | after-k")->capture_default_str();
    sweep->add_option("--threads", threads, "Rows simulated concurrently")->capture_default_str();

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Print lower bounds, optimal block sizes and predicted I/O");
    std::int64_t bounds_n = 0, bounds_m = 0;
    std::optional<std::int64_t> alpha;
    bounds->add_option("--n", bounds_n, "Matrix dimension")->required();
    bounds->add_option("--cache", bounds_m, "Cache capacity M")->required();
    bounds->add_option("--alpha", alpha, "bk for the alpha shape (default 1)");

    // selftest
    auto* self = app.add_subcommand("selftest", "Check the engines against the reference vectors");

    // replay
    auto* replay = app.add_subcommand("replay", "Replay a trace file");
    std::string trace_in;
    replay->add_option("--trace", trace_in, "tilecache-trace v1 file")->required();
    replay->add_option("--cache", capacity, "Cache capacity M")->required();
    replay->add_option("--policy", policy, "lru | lfu | pinned-lru")->required();
    replay->add_option("--engine", engine, "LRU engine: scan | fast")->capture_default_str();
    replay->add_option("--format", format, "csv | json")->capture_default_str();
    replay->add_flag("--checkpoints", checkpoints, "Emit event_index,reads,writes after every event");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*sim || *replay) {
            RunContext ctx;
            ctx.capacity = capacity;
            ctx.policy = parse_policy(policy);
            ctx.engine = engine_for(ctx.policy, parse_backend(engine));
            const OutputFormat fmt = parse_format(format);
            std::vector<Checkpoint> rows;
            SimResult result;

            if (*sim) {
                ctx.n = n;
                ctx.spec = BlockSpec{bi, bj, bk};
                validate(*ctx.spec, n);
                const TraceOptions options{ctx.policy == Policy::PinnedLru, parse_pin_placement(placement)};
                if (checkpoints || !trace_out.empty()) {
                    AccessTrace trace = options.pinned ? generate_pinned_trace(n, *ctx.spec, options.placement)
                                                       : generate_trace(n, *ctx.spec);
                    if (!trace_out.empty()) write_trace_file(trace_out, trace);
                    result = run_trace(trace, ctx, checkpoints, rows);
                } else {
                    result = simulate_generated(n, *ctx.spec, options, capacity, ctx.engine);
                }
            } else {
                const AccessTrace trace = read_trace_file(trace_in);
                ctx.n = trace.meta.n;
                result = run_trace(trace, ctx, checkpoints, rows);
            }
            print_result(ctx, result, fmt, checkpoints ? &rows : nullptr);
            return kExitOk;
        }

        if (*sweep) {
            ExperimentConfig cfg;
            cfg.capacity = capacity;
            cfg.axis = parse_axis(axis);
            cfg.range = parse_range(range);
            cfg.policies = parse_policy_list(policies);
            cfg.backend = parse_backend(engine);
            cfg.format = parse_format(format);
            cfg.placement = parse_pin_placement(placement);
            cfg.threads = threads;
            // Defaults for the bk sweep (n = 120, bi = bj = 10).
            cfg.n = fixed_n.value_or(120);
            cfg.bi = fixed_bi.value_or(cfg.axis == SweepAxis::Bk ? 10 : 1);
            cfg.bj = fixed_bj.value_or(cfg.axis == SweepAxis::Bk ? 10 : 1);
            cfg.bk = fixed_bk.value_or(1);

            const SweepResult res = run_sweep(cfg);
            for (const auto& w : res.warnings) std::cerr << "warning: " << w << '\n';
            std::ofstream file;
            if (!out_path.empty()) {
                file.open(out_path, std::ios::binary);
                if (!file) throw ConfigError("cannot open '" + out_path + "' for writing");
            }
            std::ostream& out = out_path.empty() ? std::cout : file;
            if (cfg.format == OutputFormat::Json)
                write_json(out, res.rows);
            else
                write_csv(out, res.rows);
            return kExitOk;
        }

        if (*bounds) {
            std::cout << to_json(report_bounds(bounds_n, bounds_m, alpha)) << '\n';
            return kExitOk;
        }

        if (*self) {
            const SelftestReport report = selftest();
            for (const auto& c : report.checks)
                std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
            return report.ok() ? kExitOk : kExitFailure;
        }
    } catch (const tilecache::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
