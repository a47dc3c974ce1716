#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tilecache/bounds.hpp"
#include "tilecache/engines.hpp"
#include "tilecache/harness.hpp"
#include "tilecache/kernel.hpp"
#include "tilecache/simulate.hpp"
#include "tilecache/trace.hpp"
#include "tilecache/trace_io.hpp"

namespace py = pybind11;
using namespace tilecache;

namespace {

TileShape shape_from(const std::string& kind, std::int64_t alpha) {
    if (kind == "cubic") return TileShape::cubic();
    if (kind == "rect") return TileShape::rect();
    if (kind == "alpha") return TileShape::with_alpha(alpha);
    throw ConfigError("unknown shape '" + kind + "' (expected cubic, rect or alpha)");
}

py::dict row_dict(const SweepRow& r) {
    py::dict d;
    d["axis_value"] = r.axis_value;
    d["policy"] = std::string(to_string(r.policy));
    d["n"] = r.n;
    d["bi"] = r.bi;
    d["bj"] = r.bj;
    d["bk"] = r.bk;
    d["M"] = r.capacity;
    d["reads"] = r.reads;
    d["writes"] = r.writes;
    d["io"] = r.io;
    d["olivry"] = r.olivry;
    d["hong_kung"] = r.hong_kung;
    d["predicted_io"] = r.predicted_io;
    d["normalized"] = r.normalized;
    d["feasible"] = r.feasible;
    return d;
}

py::dict report_dict(const BoundsReport& r) {
    py::dict d;
    d["n"] = r.n;
    d["M"] = r.capacity;
    d["shape"] = to_string(r.shape);
    d["b"] = r.b;
    d["predicted_io_exact"] = r.predicted_io_exact;
    d["predicted_io_asymptotic"] = r.predicted_io_asymptotic;
    d["hong_kung"] = r.hong_kung;
    d["olivry"] = r.olivry;
    return d;
}

Matrix<double> to_matrix(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw ShapeError("expected a square 2-D array");
    const auto n = static_cast<std::int32_t>(a.shape(0));
    return Matrix<double>(n, std::vector<double>(a.data(), a.data() + a.size()));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Cache simulation and I/O bounds for blocked matrix multiplication";

    auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<TraceError>(m, "TraceError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<InfeasibleError>(m, "InfeasibleError", base.ptr());
    py::register_exception<ShapeError>(m, "ShapeError", base.ptr());

    py::enum_<Role>(m, "Role").value("A", Role::A).value("B", Role::B).value("C", Role::C);

    py::class_<IdScheme>(m, "IdScheme")
        .def(py::init<std::int32_t>(), py::arg("n"))
        .def_property_readonly("n", &IdScheme::n)
        .def_property_readonly("space", &IdScheme::space)
        .def("id", &IdScheme::id, py::arg("role"), py::arg("i"), py::arg("j"));
    m.def("assign_ids", &assign_ids, py::arg("n"));

    py::class_<BlockSpec>(m, "BlockSpec")
        .def(py::init([](std::int32_t bi, std::int32_t bj, std::int32_t bk) { return BlockSpec{bi, bj, bk}; }),
             py::arg("bi") = 1, py::arg("bj") = 1, py::arg("bk") = 1)
        .def_readwrite("bi", &BlockSpec::bi)
        .def_readwrite("bj", &BlockSpec::bj)
        .def_readwrite("bk", &BlockSpec::bk)
        .def("__repr__", [](const BlockSpec& s) {
            return "BlockSpec(" + std::to_string(s.bi) + ", " + std::to_string(s.bj) + ", " +
                   std::to_string(s.bk) + ")";
        });

    py::class_<AccessTrace>(m, "AccessTrace")
        .def_property_readonly("n", [](const AccessTrace& t) { return t.meta.n; })
        .def_property_readonly("pinned", [](const AccessTrace& t) { return t.meta.pinned; })
        .def_property_readonly("events",
                               [](const AccessTrace& t) {
                                   std::vector<std::pair<EntryId, bool>> out;
                                   out.reserve(t.events.size());
                                   for (const auto& e : t.events) out.emplace_back(e.id, e.write);
                                   return out;
                               })
        .def("__len__", &AccessTrace::size)
        .def("save", [](const AccessTrace& t, const std::string& path) { write_trace_file(path, t); });

    m.def("generate_trace", &generate_trace, py::arg("n"), py::arg("spec"));
    m.def(
        "generate_pinned_trace",
        [](std::int32_t n, const BlockSpec& spec, const std::string& placement) {
            return generate_pinned_trace(n, spec, parse_pin_placement(placement));
        },
        py::arg("n"), py::arg("spec"), py::arg("placement") = "after-kb");
    m.def("load_trace", &read_trace_file, py::arg("path"));

    py::class_<SimResult>(m, "SimResult")
        .def_readonly("reads", &SimResult::reads)
        .def_readonly("writes", &SimResult::writes)
        .def_readonly("io", &SimResult::io)
        .def_readonly("events", &SimResult::events)
        .def("__repr__", [](const SimResult& r) {
            return "SimResult(reads=" + std::to_string(r.reads) + ", writes=" + std::to_string(r.writes) +
                   ", io=" + std::to_string(r.io) + ", events=" + std::to_string(r.events) + ")";
        });

    m.def(
        "simulate",
        [](const AccessTrace& trace, std::int32_t capacity, const std::string& engine) {
            return simulate(trace, capacity, parse_engine(engine));
        },
        py::arg("trace"), py::arg("capacity"), py::arg("engine") = "lru-fast");
    m.def(
        "simulate_policy",
        [](std::int32_t n, const BlockSpec& spec, std::int32_t capacity, const std::string& policy,
           const std::string& engine, const std::string& placement) {
            const Policy p = parse_policy(policy);
            const TraceOptions options{p == Policy::PinnedLru, parse_pin_placement(placement)};
            py::gil_scoped_release release;
            return simulate_generated(n, spec, options, capacity, engine_for(p, parse_backend(engine)));
        },
        py::arg("n"), py::arg("spec"), py::arg("capacity"), py::arg("policy") = "lru",
        py::arg("engine") = "fast", py::arg("placement") = "after-kb",
        "Replay a generated trace without materializing it.");

    m.def("hong_kung_bound", &hong_kung_bound, py::arg("m"), py::arg("k"), py::arg("n"), py::arg("capacity"));
    m.def("olivry_bound", &olivry_bound, py::arg("n"), py::arg("capacity"));
    m.def(
        "optimal_block",
        [](std::int64_t capacity, const std::string& shape, std::int64_t alpha) {
            return optimal_block(capacity, shape_from(shape, alpha));
        },
        py::arg("capacity"), py::arg("shape") = "rect", py::arg("alpha") = 1);
    m.def(
        "predicted_io",
        [](std::int64_t n, std::int64_t capacity, const std::string& shape, std::int64_t alpha) {
            const PredictedIo io = predicted_io(n, capacity, shape_from(shape, alpha));
            return py::make_tuple(io.b, io.exact, io.asymptotic);
        },
        py::arg("n"), py::arg("capacity"), py::arg("shape") = "rect", py::arg("alpha") = 1,
        "Returns (b, exact, asymptotic).");
    m.def(
        "best_shape", [](std::int64_t n, std::int64_t capacity) { return to_string(best_shape(n, capacity)); },
        py::arg("n"), py::arg("capacity"));
    m.def(
        "report_bounds",
        [](std::int64_t n, std::int64_t capacity, std::optional<std::int64_t> alpha) {
            py::list out;
            for (const auto& r : report_bounds(n, capacity, alpha)) out.append(report_dict(r));
            return out;
        },
        py::arg("n"), py::arg("capacity"), py::arg("alpha") = py::none());

    m.def(
        "run_sweep",
        [](const std::string& axis, std::tuple<int, int, int> range, std::int32_t capacity,
           const std::vector<std::string>& policies, std::int32_t n, std::int32_t bi, std::int32_t bj,
           std::int32_t bk, const std::string& engine, const std::string& placement) {
            ExperimentConfig cfg;
            cfg.axis = parse_axis(axis);
            cfg.range = SweepRange{std::get<0>(range), std::get<1>(range), std::get<2>(range)};
            cfg.capacity = capacity;
            cfg.policies.clear();
            for (const auto& p : policies) cfg.policies.push_back(parse_policy(p));
            cfg.n = n;
            cfg.bi = bi;
            cfg.bj = bj;
            cfg.bk = bk;
            cfg.backend = parse_backend(engine);
            cfg.placement = parse_pin_placement(placement);
            SweepResult res;
            {
                py::gil_scoped_release release;
                res = run_sweep(cfg);
            }
            py::list rows;
            for (const auto& r : res.rows) rows.append(row_dict(r));
            return rows;
        },
        py::arg("axis"), py::arg("range"), py::arg("capacity"), py::arg("policies") = std::vector<std::string>{"lru"},
        py::arg("n") = 120, py::arg("bi") = 1, py::arg("bj") = 1, py::arg("bk") = 1, py::arg("engine") = "fast",
        py::arg("placement") = "after-kb", "range is (start, stop, step) with stop inclusive.");

    m.def("selftest", [](std::uint64_t seed) {
        py::list out;
        for (const auto& c : selftest(seed).checks) out.append(py::make_tuple(c.name, c.passed, c.detail));
        return out;
    }, py::arg("seed") = 20240601);

    m.def(
        "timing_probe",
        [](const std::vector<std::int32_t>& capacities, std::int32_t n, const std::string& engine, int repeats) {
            py::list out;
            for (const auto& r : timing_probe(capacities, n, parse_engine(engine), repeats))
                out.append(py::make_tuple(r.capacity, r.seconds, r.ratio));
            return out;
        },
        py::arg("capacities"), py::arg("n"), py::arg("engine") = "lru-fast", py::arg("repeats") = 3);

    m.def("flop_count", &flop_count, py::arg("n"));
    m.def(
        "matmul",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& b, const BlockSpec& spec) {
            const Matrix<double> c = matmul(to_matrix(a), to_matrix(b), spec);
            py::array_t<double> out({c.n(), c.n()});
            std::copy(c.data().begin(), c.data().end(), out.mutable_data());
            return out;
        },
        py::arg("a"), py::arg("b"), py::arg("spec") = BlockSpec{});
}
