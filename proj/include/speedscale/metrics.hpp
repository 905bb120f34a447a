#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "speedscale/model.hpp"

namespace speedscale {

/// P = s^alpha.
struct PowerModel {
  double alpha = 3.0;

  void validate() const;
  double power(double speed) const;
};

/// Newton cooling T' = P - b*T, integrated by forward Euler with step dt.
struct CoolingModel {
  double b = 0.1;
  double dt = 0.1;
  double t0 = 0.0;

  void validate() const;
  /// Forward Euler is unstable (oscillates or diverges) once b*dt >= 1.
  bool stable() const { return b * dt < 1.0; }
};

struct WindowViolation {
  std::size_t segment = 0;
  JobId job = 0;
};

struct FeasibilityReport {
  std::vector<DeadlineMiss> misses;
  std::vector<WindowViolation> violations;

  bool feasible() const { return misses.empty() && violations.empty(); }
};

struct MetricsReport {
  double energy = 0.0;
  double max_speed = 0.0;
  std::optional<double> max_temperature;  // empty when no cooling model was given
  bool feasible = true;
  std::vector<DeadlineMiss> misses;
};

double energy(const SpeedSchedule& schedule, const PowerModel& power);
double max_speed(const SpeedSchedule& schedule);

/// Steps through every segment and every idle gap (P = 0) from the first
/// segment start, at min(dt, time left in the piece). Throws
/// std::domain_error when the model is not Euler-stable.
double max_temperature(const SpeedSchedule& schedule, const CoolingModel& cooling, const PowerModel& power);

/// Work counted for a job is only the part of its segments inside
/// [release, deadline]; any attributed segment sticking out is a violation.
FeasibilityReport verify_feasibility(const SpeedSchedule& schedule, const Instance& instance);

/// energy(alg) / energy(yds); empty when the optimum uses no energy.
std::optional<double> empirical_ratio(const SpeedSchedule& alg, const SpeedSchedule& yds, const PowerModel& power);

MetricsReport measure(const SpeedSchedule& schedule, const Instance& instance, const PowerModel& power,
                      const std::optional<CoolingModel>& cooling = std::nullopt);

/// Best known upper bounds on the competitive ratio for energy at alpha = 3,
/// keyed by "AVR", "OA", "BKP", "qOA" (the qOA bound holds for q = 1.54).
std::optional<double> known_ratio_bound_alpha3(std::string_view algorithm);

}  // namespace speedscale
