#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <vector>

namespace speedscale {

/// One HTTP request: arrival time and response size. `bytes` is empty when
/// the log carried `-`; it is filled in by substitute_empty_responses().
struct TraceRecord {
  double timestamp = 0.0;
  std::optional<std::int64_t> bytes;
};

struct ParsedTrace {
  std::vector<TraceRecord> records;
  std::size_t skipped = 0;
};

/// Size assigned to requests that returned no body (304/404 and friends).
inline constexpr std::int64_t kEmptyResponseBytes = 50;
inline constexpr double kSecondsPerDay = 86400.0;

/// Parses ITA epa-http lines: `host [DD:HH:MM:SS] "request" status bytes`.
/// Timestamps are relative to the first record's day; malformed lines are
/// skipped and counted.
ParsedTrace parse_trace(std::istream& in);

std::vector<TraceRecord> substitute_empty_responses(std::vector<TraceRecord> records);

/// Keeps 1-based positions offset, offset+stride, ...
std::vector<TraceRecord> decimate(const std::vector<TraceRecord>& records, int stride, int offset);

/// Concatenates `copies` copies, copy k shifted by k * day_length.
std::vector<TraceRecord> replicate_days(const std::vector<TraceRecord>& records, int copies,
                                        double day_length = kSecondsPerDay);

}  // namespace speedscale
