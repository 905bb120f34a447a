#include "speedscale/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace speedscale {

void validate(const Job& job) {
  if (!std::isfinite(job.release) || !std::isfinite(job.deadline) || !std::isfinite(job.work)) {
    throw std::invalid_argument("job " + std::to_string(job.id) + ": non-finite field");
  }
  if (!(job.deadline > job.release)) {
    throw std::invalid_argument("job " + std::to_string(job.id) + ": deadline must exceed release");
  }
  if (!(job.work > 0.0)) {
    throw std::invalid_argument("job " + std::to_string(job.id) + ": work must be positive");
  }
}

double span(const Job& job) { return job.deadline - job.release; }

Instance::Instance(std::vector<Job> jobs) : jobs_(std::move(jobs)) {
  std::stable_sort(jobs_.begin(), jobs_.end(),
                   [](const Job& a, const Job& b) { return a.release < b.release; });
  for (std::size_t i = 0; i < jobs_.size(); ++i) {
    jobs_[i].id = static_cast<JobId>(i);
    validate(jobs_[i]);
    horizon_ = i == 0 ? jobs_[i].deadline : std::max(horizon_, jobs_[i].deadline);
  }
}

Instance Instance::from_indexed(std::vector<Job> jobs) {
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (jobs[i].id != static_cast<JobId>(i)) {
      throw std::invalid_argument("job ids must be dense and match row order");
    }
    if (i > 0 && jobs[i].release < jobs[i - 1].release) {
      throw std::invalid_argument("jobs must be sorted by release");
    }
  }
  return Instance(std::move(jobs));
}

SpeedSchedule::SpeedSchedule(std::vector<Segment> segments) : segments_(std::move(segments)) {
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const Segment& s = segments_[i];
    if (!(s.start < s.end)) throw std::invalid_argument("segment with start >= end");
    if (!(s.speed >= 0.0) || !std::isfinite(s.speed)) throw std::invalid_argument("negative speed");
    if (s.job.has_value() != (s.speed > 0.0)) {
      throw std::invalid_argument("segment job must be present iff speed > 0");
    }
    if (i > 0 && s.start < segments_[i - 1].end) {
      throw std::invalid_argument("segments overlap or are unsorted");
    }
  }
}

IntervalWork interval_work(const Instance& instance, double t1, double t2) {
  if (!(t2 > t1)) throw std::invalid_argument("interval_work requires t2 > t1");
  double work = 0.0;
  for (const Job& j : instance.jobs()) {
    if (j.release >= t1 && j.deadline <= t2) work += j.work;
  }
  return {t1, t2, work, work / (t2 - t1)};
}

double allocated_work(const SpeedSchedule& schedule, JobId id) {
  double total = 0.0;
  for (const Segment& s : schedule.segments()) {
    if (s.job == id) total += s.work();
  }
  return total;
}

std::vector<double> allocated_work_by_job(const SpeedSchedule& schedule, std::size_t job_count) {
  std::vector<double> out(job_count, 0.0);
  for (const Segment& s : schedule.segments()) {
    if (s.job && *s.job >= 0 && static_cast<std::size_t>(*s.job) < job_count) {
      out[static_cast<std::size_t>(*s.job)] += s.work();
    }
  }
  return out;
}

}  // namespace speedscale
