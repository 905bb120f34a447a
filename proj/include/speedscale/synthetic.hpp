#pragma once

#include <cstdint>
#include <ostream>

namespace speedscale {

/// Parameters of the synthetic one-day web trace written in ITA epa-http layout.
struct SyntheticTraceParams {
  std::int64_t requests = 50000;
  std::uint64_t seed = 20090101;
  double median_bytes = 2000.0;
  double log_sigma = 1.3;       // lognormal shape of response sizes
  double empty_fraction = 0.13; // share of 304/404 responses without a body
  double peak_hour = 14.0;
  double peak_width_hours = 4.5;
  double night_floor = 0.2;     // night-time rate relative to the peak
};

/// Writes a diurnal trace: request rate follows a daily bump peaking at
/// `peak_hour`, response sizes are lognormal, a fraction carry `-` or 0 bytes.
void write_synthetic_trace(std::ostream& out, const SyntheticTraceParams& params);

}  // namespace speedscale
