#include "speedscale/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace speedscale {

void PowerModel::validate() const {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be > 1");
}

double PowerModel::power(double speed) const {
  if (speed == 0.0) return 0.0;
  if (alpha == 3.0) return speed * speed * speed;
  return std::pow(speed, alpha);
}

void CoolingModel::validate() const {
  if (!(b > 0.0) || !std::isfinite(b)) throw std::invalid_argument("cooling b must be > 0");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("cooling dt must be > 0");
  if (!std::isfinite(t0)) throw std::invalid_argument("initial temperature must be finite");
}

double energy(const SpeedSchedule& schedule, const PowerModel& power) {
  power.validate();
  double total = 0.0;
  for (const Segment& s : schedule.segments()) total += power.power(s.speed) * s.duration();
  return total;
}

double max_speed(const SpeedSchedule& schedule) {
  double best = 0.0;
  for (const Segment& s : schedule.segments()) best = std::max(best, s.speed);
  return best;
}

namespace {

// Advances T through `length` seconds at constant power p; returns the new T
// and raises `peak`. Full steps use the closed form of the linear recurrence
// T_{k+1} = a*T_k + dt*p, a = 1 - b*dt, which is monotone in k.
double hold(double temp, double p, double length, const CoolingModel& c, double& peak) {
  if (length <= 0.0) return temp;
  const double steps = std::floor(length / c.dt);
  if (steps > 0.0) {
    const double fixed = p / c.b;
    temp = fixed + (temp - fixed) * std::pow(1.0 - c.b * c.dt, steps);
    peak = std::max(peak, temp);
  }
  const double rest = length - steps * c.dt;
  if (rest > c.dt * 1e-9) {
    temp += rest * (p - c.b * temp);
    peak = std::max(peak, temp);
  }
  return temp;
}

}  // namespace

double max_temperature(const SpeedSchedule& schedule, const CoolingModel& cooling, const PowerModel& power) {
  cooling.validate();
  power.validate();
  if (!cooling.stable()) throw std::domain_error("max_temperature: b*dt >= 1, Euler step unstable");
  double temp = cooling.t0;
  double peak = temp;
  const auto segments = schedule.segments();
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i > 0) temp = hold(temp, 0.0, segments[i].start - segments[i - 1].end, cooling, peak);
    temp = hold(temp, power.power(segments[i].speed), segments[i].duration(), cooling, peak);
  }
  return peak;
}

FeasibilityReport verify_feasibility(const SpeedSchedule& schedule, const Instance& instance) {
  FeasibilityReport report;
  std::vector<double> done(instance.size(), 0.0);
  const auto segments = schedule.segments();
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const Segment& s = segments[i];
    if (!s.job) continue;
    if (*s.job < 0 || static_cast<std::size_t>(*s.job) >= instance.size()) {
      throw std::invalid_argument("verify_feasibility: segment names an unknown job");
    }
    const Job& j = instance.job(*s.job);
    if (s.start < j.release || s.end > j.deadline) report.violations.push_back({i, j.id});
    const double lo = std::max(s.start, j.release);
    const double hi = std::min(s.end, j.deadline);
    if (hi > lo) done[static_cast<std::size_t>(j.id)] += s.speed * (hi - lo);
  }
  for (const Job& j : instance.jobs()) {
    const double got = done[static_cast<std::size_t>(j.id)];
    if (got < j.work * (1.0 - kWorkEpsilon)) report.misses.push_back({j.id, j.work - got});
  }
  return report;
}

std::optional<double> empirical_ratio(const SpeedSchedule& alg, const SpeedSchedule& yds, const PowerModel& power) {
  const double opt = energy(yds, power);
  if (!(opt > 0.0)) return std::nullopt;
  return energy(alg, power) / opt;
}

MetricsReport measure(const SpeedSchedule& schedule, const Instance& instance, const PowerModel& power,
                      const std::optional<CoolingModel>& cooling) {
  MetricsReport report;
  report.energy = energy(schedule, power);
  report.max_speed = max_speed(schedule);
  if (cooling) report.max_temperature = max_temperature(schedule, *cooling, power);
  FeasibilityReport f = verify_feasibility(schedule, instance);
  report.feasible = f.feasible();
  report.misses = std::move(f.misses);
  return report;
}

std::optional<double> known_ratio_bound_alpha3(std::string_view algorithm) {
  if (algorithm == "AVR") return 108.0;
  if (algorithm == "OA") return 27.0;
  if (algorithm == "BKP") return 135.6;
  if (algorithm == "qOA") return 6.7;
  return std::nullopt;
}

}  // namespace speedscale
