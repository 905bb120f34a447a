#pragma once

#include <span>
#include <utility>
#include <vector>

#include "speedscale/model.hpp"

namespace speedscale {

/// A maximum-intensity interval together with the jobs that make up w(t1, t2).
struct CriticalInterval {
  double t1 = 0.0;
  double t2 = 0.0;
  double intensity = 0.0;
  std::vector<JobId> jobs;
};

/// Maximum-intensity interval over (release, deadline) candidate pairs.
/// Ties go to the earliest t1, then the earliest t2. Throws on an empty job set.
CriticalInterval find_critical_interval(std::span<const Job> jobs);
inline CriticalInterval find_critical_interval(const Instance& instance) {
  return find_critical_interval(instance.jobs());
}

/// Removes [t1, t2] from the time line of the remaining `jobs`: releases and
/// deadlines after t1 move left by (t2 - t1), clamped at t1. Ids are kept.
std::vector<Job> compress_time(std::span<const Job> jobs, double t1, double t2);

/// Tracks the pieces of the original time line that are still free so that
/// times on a compressed time line can be expanded back.
class CompressionMap {
 public:
  CompressionMap();

  /// Removes the compressed interval [c1, c2].
  void cut(double c1, double c2);
  /// Original-time pieces covered by the compressed interval [c1, c2].
  std::vector<std::pair<double, double>> expand(double c1, double c2) const;
  double to_compressed(double original) const;
  std::size_t cuts() const { return cuts_; }

 private:
  struct Free {
    double start;  // original time
    double end;    // original time
    double shift;  // total length removed before this piece
  };
  std::vector<Free> free_;
  std::size_t cuts_ = 0;
};

struct YdsResult {
  SpeedSchedule schedule;
  /// Critical intervals in selection order, in compressed coordinates.
  std::vector<CriticalInterval> intervals;
};

/// Energy-optimal feasible schedule: repeatedly run the current
/// maximum-intensity interval at its intensity (EDF inside, lowest id on
/// equal deadlines) and compress it out of the time line.
YdsResult yds_solve(const Instance& instance);
inline SpeedSchedule yds_schedule(const Instance& instance) { return yds_solve(instance).schedule; }

}  // namespace speedscale
