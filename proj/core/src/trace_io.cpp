#include "gossip/trace_io.hpp"

#include <zlib.h>

#include <charconv>
#include <cstring>
#include <fstream>
#include <functional>
#include <memory>

namespace gossip::engine {
namespace {

class LineWriter {
 public:
  explicit LineWriter(std::function<void(const std::string&)> sink) : sink_(std::move(sink)) {}
  ~LineWriter() = default;

  void put(char c) { buf_.push_back(c); }
  void put(std::int64_t v) {
    char tmp[24];
    auto [end, ec] = std::to_chars(tmp, tmp + sizeof tmp, v);
    buf_.append(tmp, end);
  }
  void end_line() {
    buf_.push_back('\n');
    if (buf_.size() > (1u << 20)) flush();
  }
  void flush() {
    if (!buf_.empty()) sink_(buf_);
    buf_.clear();
  }

 private:
  std::function<void(const std::string&)> sink_;
  std::string buf_;
};

void emit_trace(const EventTrace& trace, LineWriter& w) {
  if (!trace.has_deliveries) throw ParameterError("trace has no delivery records; rerun with recording enabled");
  std::size_t d = 0;
  std::size_t g = 0;
  const auto& dl = trace.deliveries;
  const auto& ms = trace.messages;
  while (d < dl.size() || g < ms.size()) {
    const Step s = std::min(d < dl.size() ? dl[d].step : ms[g].created_at, g < ms.size() ? ms[g].created_at : dl[d].step);
    for (; d < dl.size() && dl[d].step == s; ++d) {
      w.put('D');
      w.put(' '), w.put(static_cast<std::int64_t>(dl[d].message));
      w.put(' '), w.put(static_cast<std::int64_t>(dl[d].receiver));
      w.put(' '), w.put(static_cast<std::int64_t>(dl[d].hops));
      w.put(' '), w.put(dl[d].step);
      w.put(' '), w.put(dl[d].first_time ? '1' : '0');
      w.end_line();
    }
    for (; g < ms.size() && ms[g].created_at == s; ++g) {
      w.put('G');
      w.put(' '), w.put(static_cast<std::int64_t>(ms[g].id));
      w.put(' '), w.put(static_cast<std::int64_t>(ms[g].origin));
      w.put(' '), w.put(ms[g].created_at);
      w.put(' '), w.put(static_cast<std::int64_t>(ms[g].initial_ttl));
      w.end_line();
    }
  }
  w.flush();
}

struct GzCloser {
  void operator()(gzFile f) const { gzclose(f); }
};
using GzHandle = std::unique_ptr<std::remove_pointer_t<gzFile>, GzCloser>;

template <class T>
T parse_field(const char*& p, const char* end, const std::string& line) {
  while (p < end && *p == ' ') ++p;
  T value{};
  auto [next, ec] = std::from_chars(p, end, value);
  if (ec != std::errc()) throw FormatError("malformed trace line: " + line);
  p = next;
  return value;
}

}  // namespace

std::string format_trace(const EventTrace& trace) {
  std::string out;
  LineWriter w([&out](const std::string& chunk) { out += chunk; });
  emit_trace(trace, w);
  return out;
}

void write_trace(const std::filesystem::path& path, const EventTrace& trace, bool gzip) {
  if (gzip) {
    GzHandle f(gzopen(path.c_str(), "wb6"));
    if (!f) throw FormatError("cannot write " + path.string());
    LineWriter w([&f, &path](const std::string& chunk) {
      if (gzwrite(f.get(), chunk.data(), static_cast<unsigned>(chunk.size())) != static_cast<int>(chunk.size())) {
        throw FormatError("gzip write failed for " + path.string());
      }
    });
    emit_trace(trace, w);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  LineWriter w([&out](const std::string& chunk) { out.write(chunk.data(), static_cast<std::streamsize>(chunk.size())); });
  emit_trace(trace, w);
  if (!out) throw FormatError("write failed for " + path.string());
}

EventTrace parse_trace(const std::string& text, std::size_t node_count) {
  EventTrace trace;
  trace.node_count = node_count;
  trace.has_deliveries = true;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    const std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    const char* p = line.data() + 1;
    const char* end = line.data() + line.size();
    if (line[0] == 'G') {
      GeneratedRecord r;
      r.id = parse_field<MessageId>(p, end, line);
      r.origin = parse_field<NodeId>(p, end, line);
      r.created_at = parse_field<Step>(p, end, line);
      r.initial_ttl = parse_field<int>(p, end, line);
      if (r.id != trace.messages.size()) throw FormatError("message ids in trace are not sequential");
      if (r.origin >= node_count) throw FormatError("origin out of range: " + line);
      trace.messages.push_back(r);
      trace.tallies.emplace_back();
    } else if (line[0] == 'D') {
      DeliveryRecord r;
      r.message = parse_field<MessageId>(p, end, line);
      r.receiver = parse_field<NodeId>(p, end, line);
      r.hops = parse_field<int>(p, end, line);
      r.step = parse_field<Step>(p, end, line);
      const int first = parse_field<int>(p, end, line);
      if (first != 0 && first != 1) throw FormatError("first flag must be 0 or 1: " + line);
      r.first_time = first == 1;
      if (r.message >= trace.messages.size()) throw FormatError("delivery before generation: " + line);
      if (r.receiver >= node_count) throw FormatError("receiver out of range: " + line);
      trace.deliveries.push_back(r);
      if (r.first_time && r.receiver != trace.messages[r.message].origin) {
        ++trace.tallies[r.message].first_receivers;
        trace.tallies[r.message].hop_sum += static_cast<std::uint64_t>(r.hops);
      }
    } else {
      throw FormatError("unknown trace record: " + line);
    }
  }
  trace.total_sends = trace.total_deliveries = trace.deliveries.size();
  return trace;
}

EventTrace read_trace(const std::filesystem::path& path, std::size_t node_count) {
  // gzread passes uncompressed input through unchanged.
  GzHandle f(gzopen(path.c_str(), "rb"));
  if (!f) throw FormatError("cannot read " + path.string());
  std::string text;
  char buf[1 << 16];
  int got = 0;
  while ((got = gzread(f.get(), buf, sizeof buf)) > 0) text.append(buf, static_cast<std::size_t>(got));
  if (got < 0) throw FormatError("corrupt trace file " + path.string());
  return parse_trace(text, node_count);
}

}  // namespace gossip::engine
