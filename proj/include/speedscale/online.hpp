#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

#include "speedscale/hull.hpp"
#include "speedscale/model.hpp"

namespace speedscale {

enum class Policy { AVR, OA, QOA, BKP_EV, BKP_EP };

std::string_view to_string(Policy policy);
/// Accepts avr, oa, qoa, bkp-ev/bkp_ev, bkp-ep/bkp_ep (case-insensitive).
Policy parse_policy(std::string_view name);

struct SimConfig {
  Policy policy = Policy::OA;
  double tick = 1.0;  // seconds between forced policy evaluations
  double q = 1.0;     // qOA multiplier (ignored by other policies)

  void validate() const;
};

/// What an online policy can see at time `now`: jobs released so far, their
/// remaining work, and the full arrival history (including finished jobs).
class PolicyState {
 public:
  explicit PolicyState(const Instance& instance);

  /// Releases every job with release <= now and retires jobs whose
  /// deadline has passed from the active window. `now` must not decrease.
  void advance_to(double now);

  double now() const { return now_; }
  const Instance& instance() const { return *instance_; }
  /// Jobs [0, arrived()) have been released.
  std::size_t arrived() const { return arrived_; }
  double arrived_work() const { return arrived_work_; }
  double remaining(JobId id) const { return remaining_[static_cast<std::size_t>(id)]; }
  bool has_unfinished() const { return !unfinished_.empty(); }

  /// Sets remaining work of an arrived job; at or below the completion
  /// tolerance the job counts as finished.
  void set_remaining(JobId id, double work);
  /// Removes an arrived job from the unfinished set without completing it.
  void abandon(JobId id);

  /// Unfinished arrived jobs ordered by (deadline, id): EDF order.
  const std::set<std::pair<double, JobId>>& unfinished() const { return unfinished_; }
  /// Arrived jobs with deadline >= now, in release order.
  const std::vector<JobId>& window() const { return window_; }

  // Release points of the whole instance (distinct release times) with the
  // work released strictly before each; only points <= now are consulted.
  std::span<const double> release_points() const { return points_; }
  std::span<const double> work_before_points() const { return before_; }
  /// Work of jobs released strictly before t (t <= now).
  double work_released_before(double t) const;
  const LeftTangentIndex& tangent_index() const { return index_; }

 private:
  const Instance* instance_;
  double now_;
  std::size_t arrived_ = 0;
  double arrived_work_ = 0.0;
  std::vector<double> remaining_;
  std::set<std::pair<double, JobId>> unfinished_;
  std::vector<JobId> window_;
  std::vector<double> points_;
  std::vector<double> before_;  // size points_.size() + 1
  LeftTangentIndex index_;
};

/// sum over jobs with r <= now <= d of w / (d - r).
double speed_avr(const PolicyState& state);
/// q * max over deadlines d > now of (unfinished work due by d) / (d - now).
double speed_qoa(const PolicyState& state, double q);

/// p(t): maximum density w(t, t1, t2) / (t2 - t1) over t1 < now <= t2,
/// counting every arrived job (finished or not).
double bkp_p(const PolicyState& state);
/// v(t): maximum over t' > now of w(t, e*now - (e-1)*t', t') / (e * (t' - now)).
double bkp_v(const PolicyState& state);

/// e * p(t), or zero while nothing is left to run.
double speed_bkp_p(const PolicyState& state);
/// e * v(t), or zero while nothing is left to run.
double speed_bkp_v(const PolicyState& state);

double policy_speed(const PolicyState& state, const SimConfig& config);

struct SimResult {
  SpeedSchedule schedule;
  std::vector<DeadlineMiss> misses;
  std::size_t evaluations = 0;

  bool feasible() const { return misses.empty(); }
};

/// Called at each policy evaluation with the state and the chosen speed.
using SimObserver = std::function<void(const PolicyState&, double speed)>;

/// Online EDF simulation: the policy speed is evaluated at every boundary
/// (multiples of the tick, releases, completions, deadline of the running job)
/// and held until the next one. Unfinished jobs are dropped at their
/// deadline and reported as misses.
SimResult simulate(const Instance& instance, const SimConfig& config, const SimObserver& observer = {});

}  // namespace speedscale
