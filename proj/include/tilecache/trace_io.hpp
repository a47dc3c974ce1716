#pragma once

#include <iosfwd>
#include <string>

#include "tilecache/trace.hpp"

namespace tilecache {

// Text format:
//   tilecache-trace v1 n=<n> events=<count>
//   <id> <0|1>
//   ...
// One event per line, '\n'-terminated, no trailing blank line.
void write_trace(std::ostream& out, const AccessTrace& trace);
void write_trace_file(const std::string& path, const AccessTrace& trace);

// Throws TraceError on a malformed header, an event count mismatch, a bad
// write flag, or an id outside [0, 3n^2).
AccessTrace read_trace(std::istream& in);
AccessTrace read_trace_file(const std::string& path);

}  // namespace tilecache
