#include "tilecache/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

namespace tilecache {

namespace {

constexpr std::string_view kMagic = "tilecache-trace v1";

template <class Int>
bool parse_int(std::string_view text, Int& out) {
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

// Pulls "<key>=<int>" out of the header.
template <class Int>
Int header_field(std::string_view header, std::string_view key) {
    const std::string needle = " " + std::string(key) + "=";
    const auto pos = header.find(needle);
    if (pos == std::string_view::npos)
        throw TraceError("trace header missing '" + std::string(key) + "='");
    auto rest = header.substr(pos + needle.size());
    rest = rest.substr(0, rest.find(' '));
    Int value{};
    if (!parse_int(rest, value))
        throw TraceError("trace header has bad value for '" + std::string(key) + "'");
    return value;
}

}  // namespace

void write_trace(std::ostream& out, const AccessTrace& trace) {
    out << kMagic << " n=" << trace.meta.n << " events=" << trace.events.size() << '\n';
    for (const auto& ev : trace.events) out << ev.id << ' ' << (ev.write ? '1' : '0') << '\n';
}

void write_trace_file(const std::string& path, const AccessTrace& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw TraceError("cannot open '" + path + "' for writing");
    write_trace(out, trace);
    if (!out) throw TraceError("failed writing '" + path + "'");
}

AccessTrace read_trace(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || !line.starts_with(kMagic))
        throw TraceError("not a tilecache-trace v1 file");

    AccessTrace trace;
    const auto n = header_field<std::int32_t>(line, "n");
    const auto count = header_field<std::uint64_t>(line, "events");
    IdScheme ids = [&] {
        try {
            return IdScheme(n);
        } catch (const ConfigError& e) {
            throw TraceError(std::string("trace header: ") + e.what());
        }
    }();
    trace.meta.n = n;
    trace.events.reserve(count);

    std::uint64_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto space = line.find(' ');
        if (space == std::string::npos)
            throw TraceError("line " + std::to_string(line_no) + ": expected '<id> <0|1>'");
        std::int64_t id = 0;
        std::string_view flag = std::string_view(line).substr(space + 1);
        if (!parse_int(std::string_view(line).substr(0, space), id))
            throw TraceError("line " + std::to_string(line_no) + ": bad id");
        if (flag != "0" && flag != "1")
            throw TraceError("line " + std::to_string(line_no) + ": write flag must be 0 or 1");
        if (id < 0 || id >= ids.space())
            throw TraceError("line " + std::to_string(line_no) + ": id " + std::to_string(id) +
                             " outside [0, " + std::to_string(ids.space()) + ")");
        trace.events.push_back(AccessEvent{static_cast<EntryId>(id), flag == "1"});
    }
    if (trace.events.size() != count)
        throw TraceError("trace header announces " + std::to_string(count) + " events, found " +
                         std::to_string(trace.events.size()));
    return trace;
}

AccessTrace read_trace_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TraceError("cannot open '" + path + "'");
    return read_trace(in);
}

}  // namespace tilecache
