#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "speedscale/model.hpp"
#include "speedscale/trace.hpp"

namespace speedscale {

enum class WorkloadKind { Flat, FixedSpan, ModeratelySpiky, HighlySpiky };

std::string_view to_string(WorkloadKind kind);
/// Accepts flat, fixed_span, moderately_spiky, highly_spiky (and '-' variants).
WorkloadKind parse_workload_kind(std::string_view name);

struct WorkloadSpec {
  WorkloadKind kind = WorkloadKind::Flat;
  double scale = 0.4;         // seconds of span per work unit
  double fixed_span = 1000.0; // seconds
  double light_len = 200.0;   // L
  double heavy_len = 50.0;    // H
  std::uint64_t seed = 1;

  /// Scale default for `kind` (0.1 for moderately spiky, 0.4 otherwise).
  static WorkloadSpec defaults(WorkloadKind kind);
  void validate() const;
};

/// Deterministic stream on top of std::mt19937_64 (whose output sequence is
/// fixed by the standard). Floating draws are built from the raw 64-bit
/// words so the stream does not depend on library distribution code.
class Rng {
 public:
  static constexpr std::string_view kName = "mt19937_64";

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform on (0, 2].
  double uniform_0_2() { return 2.0 * (1.0 - uniform01()); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

Instance gen_flat(const std::vector<TraceRecord>& records, double scale = 0.4);
Instance gen_fixed_span(const std::vector<TraceRecord>& records, double span = 1000.0);
Instance gen_moderately_spiky(const std::vector<TraceRecord>& records);

/// Symmetric triangle over [h_start, h_start + H) peaking at 2 in the middle;
/// zero outside the interval.
double triangle(double x, double h_start, double heavy_len);

/// Start of the heavy interval containing `t`, if any. The time line starts
/// with a light interval at t = 0 and alternates L, H, L, H, ...
std::optional<double> heavy_interval_start(double t, double light_len, double heavy_len);

Instance gen_highly_spiky(const std::vector<TraceRecord>& records, double scale, double light_len,
                          double heavy_len, Rng& rng);

Instance generate(const std::vector<TraceRecord>& records, const WorkloadSpec& spec);

}  // namespace speedscale
