#include "speedscale/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "speedscale/workload.hpp"

namespace speedscale {

namespace {

// Box-Muller by hand: std::normal_distribution output differs between
// standard libraries, and the bundled trace must be reproducible.
double standard_normal(Rng& rng) {
  const double u1 = 1.0 - rng.uniform01();
  const double u2 = rng.uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

void write_synthetic_trace(std::ostream& out, const SyntheticTraceParams& params) {
  Rng rng(params.seed);
  constexpr int kSeconds = 86400;
  // Mirror the real EPA capture, which starts late on day 29.
  constexpr std::int64_t kStartDay = 29;
  constexpr std::int64_t kStartSecond = 23 * 3600 + 53 * 60 + 25;

  std::vector<double> cumulative(kSeconds);
  double acc = 0.0;
  for (int s = 0; s < kSeconds; ++s) {
    const double hour = std::fmod((kStartSecond + s) / 3600.0, 24.0);
    const double z = (hour - params.peak_hour) / params.peak_width_hours;
    acc += params.night_floor + (1.0 - params.night_floor) * std::exp(-z * z);
    cumulative[s] = acc;
  }

  std::vector<std::int64_t> seconds(static_cast<std::size_t>(params.requests));
  for (auto& s : seconds) {
    const double u = rng.uniform01() * acc;
    s = std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin();
    s = std::min<std::int64_t>(s, kSeconds - 1);
  }
  std::sort(seconds.begin(), seconds.end());

  for (std::int64_t s : seconds) {
    const std::int64_t abs = kStartSecond + s;
    const std::int64_t day = kStartDay + abs / kSeconds;
    const std::int64_t rem = abs % kSeconds;
    const auto host = rng.next_u64() % 4000;
    const auto page = rng.next_u64() % 900;

    int status = 200;
    std::string bytes;
    if (rng.uniform01() < params.empty_fraction) {
      const double kind = rng.uniform01();
      status = kind < 0.7 ? 304 : (kind < 0.9 ? 404 : 200);
      bytes = status == 200 ? "0" : "-";
    } else {
      const double z = standard_normal(rng);
      const double size = std::clamp(params.median_bytes * std::exp(params.log_sigma * z), 1.0, 2.0e6);
      bytes = std::to_string(static_cast<std::int64_t>(std::llround(size)));
    }
    char stamp[32];
    std::snprintf(stamp, sizeof stamp, "[%02lld:%02lld:%02lld:%02lld]", static_cast<long long>(day),
                  static_cast<long long>(rem / 3600), static_cast<long long>((rem / 60) % 60),
                  static_cast<long long>(rem % 60));
    out << "host" << host << ".example.net " << stamp << " \"GET /docs/page" << page
        << ".html HTTP/1.0\" " << status << ' ' << bytes << '\n';
  }
}

}  // namespace speedscale
