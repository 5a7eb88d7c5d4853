#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "aspomcp/trace/trace.hpp"

namespace aspomcp::trace {

inline constexpr int kTraceFormatVersion = 1;

class TraceFormatError : public std::runtime_error {
 public:
  TraceFormatError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

// Tab-separated, one record per line:
//
//   aspomcp-trace  1
//   domain         rocksample
//   config_digest  <16 hex digits, FNV-1a of the config block>
//   seed           <u64>
//   gamma          <double>
//   return         <double>
//   config         <key>  <value>      (one line per entry)
//   step           <t>  <features>  <action>  <reward>
//
// Features are space separated ground atoms. Doubles are written in their
// shortest round-trip form, so read(write(t)) == t.
void write_trace(std::ostream& out, const Trace& trace);
Trace read_trace(std::istream& in);

void save_trace(const std::filesystem::path& path, const Trace& trace);
Trace load_trace(const std::filesystem::path& path);

}  // namespace aspomcp::trace
