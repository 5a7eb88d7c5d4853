#include "aspomcp/trace/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

namespace aspomcp::trace {

namespace {

constexpr std::string_view kMagic = "aspomcp-trace";

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

template <typename T>
T parse_number(std::string_view text, int line, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw TraceFormatError(line, std::string("malformed ") + what + " '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t parse_hex(std::string_view text, int line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, 16);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw TraceFormatError(line, "malformed config digest '" + std::string(text) + "'");
  }
  return value;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  auto [ptr, ec] = std::to_chars(buf, buf + 16, v, 16);
  std::string s(buf, ptr);
  return std::string(16 - s.size(), '0') + s;
}

}  // namespace

TraceFormatError::TraceFormatError(int line, const std::string& message)
    : std::runtime_error("trace line " + std::to_string(line) + ": " + message), line_(line) {}

void write_trace(std::ostream& out, const Trace& trace) {
  out << kMagic << '\t' << kTraceFormatVersion << '\n';
  out << "domain\t" << trace.domain << '\n';
  out << "config_digest\t" << hex(trace.config.digest()) << '\n';
  out << "seed\t" << trace.seed << '\n';
  out << "gamma\t" << format_double(trace.gamma) << '\n';
  out << "return\t" << format_double(trace.discounted_return) << '\n';
  for (const auto& [key, value] : trace.config.entries()) out << "config\t" << key << '\t' << value << '\n';
  for (const auto& step : trace.steps) {
    out << "step\t" << step.t << '\t' << logic::to_string(step.features) << '\t' << logic::to_string(step.action)
        << '\t' << format_double(step.reward) << '\n';
  }
}

Trace read_trace(std::istream& in) {
  Trace trace;
  std::string line;
  int line_no = 0;
  std::uint64_t digest = 0;
  bool have_header = false;
  bool have_digest = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_tabs(line);
    auto tag = fields[0];
    auto expect = [&](std::size_t n) {
      if (fields.size() != n) {
        throw TraceFormatError(line_no, "'" + std::string(tag) + "' record needs " + std::to_string(n - 1) +
                                            " field(s), got " + std::to_string(fields.size() - 1));
      }
    };
    if (!have_header) {
      if (tag != kMagic) throw TraceFormatError(line_no, "missing aspomcp-trace header");
      expect(2);
      int version = parse_number<int>(fields[1], line_no, "version");
      if (version != kTraceFormatVersion) {
        throw TraceFormatError(line_no, "unsupported trace format version " + std::to_string(version) +
                                            " (expected " + std::to_string(kTraceFormatVersion) + ")");
      }
      have_header = true;
      continue;
    }
    try {
      if (tag == "domain") {
        expect(2);
        trace.domain = std::string(fields[1]);
      } else if (tag == "config_digest") {
        expect(2);
        digest = parse_hex(fields[1], line_no);
        have_digest = true;
      } else if (tag == "seed") {
        expect(2);
        trace.seed = parse_number<std::uint64_t>(fields[1], line_no, "seed");
      } else if (tag == "gamma") {
        expect(2);
        trace.gamma = parse_number<double>(fields[1], line_no, "gamma");
      } else if (tag == "return") {
        expect(2);
        trace.discounted_return = parse_number<double>(fields[1], line_no, "return");
      } else if (tag == "config") {
        expect(3);
        trace.config.set(std::string(fields[1]), std::string(fields[2]));
      } else if (tag == "step") {
        expect(5);
        TraceStep step;
        step.t = parse_number<int>(fields[1], line_no, "step index");
        step.features = logic::parse_atom_set(fields[2]);
        step.action = logic::parse_ground_atom(fields[3]);
        step.reward = parse_number<double>(fields[4], line_no, "reward");
        trace.steps.push_back(std::move(step));
      } else {
        throw TraceFormatError(line_no, "unknown record '" + std::string(tag) + "'");
      }
    } catch (const TraceFormatError&) {
      throw;
    } catch (const std::exception& e) {
      throw TraceFormatError(line_no, e.what());
    }
  }
  if (!have_header) throw TraceFormatError(line_no, "empty trace file");
  if (have_digest && digest != trace.config.digest()) {
    throw TraceFormatError(line_no, "config digest does not match the config records");
  }
  return trace;
}

void save_trace(const std::filesystem::path& path, const Trace& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace file " + path.string());
  write_trace(out, trace);
  if (!out) throw std::runtime_error("error writing trace file " + path.string());
}

Trace load_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file " + path.string());
  return read_trace(in);
}

}  // namespace aspomcp::trace
