#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace speedscale {

using JobId = std::int64_t;

/// Relative tolerance on per-job work used for completion and feasibility.
inline constexpr double kWorkEpsilon = 1e-6;

/// A deadline-constrained task: `work` units must be processed in [release, deadline].
struct Job {
  JobId id = 0;
  double release = 0.0;
  double deadline = 0.0;
  double work = 0.0;
};

/// Throws std::invalid_argument unless deadline > release and work > 0.
void validate(const Job& job);

double span(const Job& job);

/// A finite job set sorted by release time. Ids are reassigned densely
/// (0..n-1) in release order on construction; ties keep input order.
class Instance {
 public:
  Instance() = default;
  explicit Instance(std::vector<Job> jobs);

  /// Builds an instance keeping the ids already present in `jobs`.
  /// The jobs must be sorted by release and ids must equal positions.
  static Instance from_indexed(std::vector<Job> jobs);

  std::span<const Job> jobs() const { return jobs_; }
  const Job& operator[](std::size_t i) const { return jobs_[i]; }
  const Job& job(JobId id) const { return jobs_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const { return jobs_.size(); }
  bool empty() const { return jobs_.empty(); }
  double horizon() const { return horizon_; }

 private:
  std::vector<Job> jobs_;
  double horizon_ = 0.0;
};

/// One constant-speed piece of a schedule. `job` is empty iff speed is zero.
struct Segment {
  double start = 0.0;
  double end = 0.0;
  double speed = 0.0;
  std::optional<JobId> job;

  double duration() const { return end - start; }
  double work() const { return speed * (end - start); }
};

/// Piecewise-constant speed function with per-segment job attribution.
/// Gaps between segments are idle time (speed zero).
class SpeedSchedule {
 public:
  SpeedSchedule() = default;
  /// Validates ordering, positivity and the job/speed pairing.
  explicit SpeedSchedule(std::vector<Segment> segments);

  std::span<const Segment> segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }
  std::size_t size() const { return segments_.size(); }

 private:
  std::vector<Segment> segments_;
};

/// Work released-and-due inside [t1, t2] and its intensity.
struct IntervalWork {
  double t1 = 0.0;
  double t2 = 0.0;
  double work = 0.0;
  double intensity = 0.0;
};

/// w(t1, t2): total work of jobs with release >= t1 and deadline <= t2.
IntervalWork interval_work(const Instance& instance, double t1, double t2);

/// A job that reached its deadline with more than the tolerated work left.
struct DeadlineMiss {
  JobId job = 0;
  double residual = 0.0;
};

/// Sum of speed * duration over the segments attributed to `id`.
double allocated_work(const SpeedSchedule& schedule, JobId id);

/// Allocated work for every job id in [0, job_count).
std::vector<double> allocated_work_by_job(const SpeedSchedule& schedule, std::size_t job_count);

}  // namespace speedscale
