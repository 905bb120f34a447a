#include "speedscale/trace.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>

namespace speedscale {
namespace {

bool parse_int(std::string_view s, std::int64_t& out) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

struct RawLine {
  std::int64_t day, hour, minute, second;
  std::optional<std::int64_t> bytes;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::optional<RawLine> parse_line(std::string_view line) {
  const auto open = line.find('[');
  const auto close = line.find(']', open == std::string_view::npos ? 0 : open);
  if (open == std::string_view::npos || close == std::string_view::npos || open == 0) return {};

  // DD:HH:MM:SS
  std::string_view stamp = line.substr(open + 1, close - open - 1);
  std::int64_t fields[4];
  for (int i = 0; i < 4; ++i) {
    const auto colon = stamp.find(':');
    std::string_view part = i < 3 ? stamp.substr(0, colon) : stamp;
    if ((i < 3 && colon == std::string_view::npos) || !parse_int(part, fields[i])) return {};
    if (i < 3) stamp.remove_prefix(colon + 1);
  }
  if (fields[0] < 0 || fields[1] < 0 || fields[1] > 23 || fields[2] < 0 || fields[2] > 59 ||
      fields[3] < 0 || fields[3] > 60) {
    return {};
  }

  // The request is quoted; status and bytes follow the closing quote.
  std::string_view rest = line.substr(close + 1);
  const auto q1 = rest.find('"');
  const auto q2 = rest.rfind('"');
  if (q1 == std::string_view::npos || q2 == q1) return {};
  rest = trim(rest.substr(q2 + 1));
  const auto sp = rest.find_first_of(" \t");
  if (sp == std::string_view::npos) return {};
  std::int64_t status = 0;
  if (!parse_int(rest.substr(0, sp), status)) return {};
  std::string_view bytes_field = trim(rest.substr(sp + 1));

  RawLine raw{fields[0], fields[1], fields[2], fields[3], std::nullopt};
  if (bytes_field != "-") {
    std::int64_t b = 0;
    if (!parse_int(bytes_field, b) || b < 0) return {};
    raw.bytes = b;
  }
  return raw;
}

}  // namespace

ParsedTrace parse_trace(std::istream& in) {
  ParsedTrace out;
  std::optional<std::int64_t> first_day;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto raw = parse_line(line);
    if (!raw) {
      ++out.skipped;
      continue;
    }
    if (!first_day) first_day = raw->day;
    const std::int64_t day = raw->day - *first_day;
    const std::int64_t secs = ((day * 24 + raw->hour) * 60 + raw->minute) * 60 + raw->second;
    out.records.push_back({static_cast<double>(secs), raw->bytes});
  }
  return out;
}

std::vector<TraceRecord> substitute_empty_responses(std::vector<TraceRecord> records) {
  for (auto& r : records) {
    if (!r.bytes || *r.bytes == 0) r.bytes = kEmptyResponseBytes;
  }
  return records;
}

std::vector<TraceRecord> decimate(const std::vector<TraceRecord>& records, int stride, int offset) {
  if (stride < 1) throw std::invalid_argument("decimate: stride must be >= 1");
  if (offset < 1 || offset > stride) throw std::invalid_argument("decimate: offset must be in [1, stride]");
  std::vector<TraceRecord> out;
  out.reserve(records.size() / static_cast<std::size_t>(stride) + 1);
  for (std::size_t i = static_cast<std::size_t>(offset - 1); i < records.size();
       i += static_cast<std::size_t>(stride)) {
    out.push_back(records[i]);
  }
  return out;
}

std::vector<TraceRecord> replicate_days(const std::vector<TraceRecord>& records, int copies,
                                        double day_length) {
  if (copies < 1) throw std::invalid_argument("replicate_days: copies must be >= 1");
  if (!(day_length > 0.0)) throw std::invalid_argument("replicate_days: day_length must be positive");
  std::vector<TraceRecord> out;
  out.reserve(records.size() * static_cast<std::size_t>(copies));
  for (int k = 0; k < copies; ++k) {
    for (const auto& r : records) {
      out.push_back({r.timestamp + k * day_length, r.bytes});
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const TraceRecord& a, const TraceRecord& b) { return a.timestamp < b.timestamp; });
  return out;
}

}  // namespace speedscale
