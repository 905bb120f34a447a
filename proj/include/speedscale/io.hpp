#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "speedscale/model.hpp"

namespace speedscale {

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);
/// Strict parse of a whole field; throws std::invalid_argument.
double parse_double(std::string_view text);

/// Header `id,release,deadline,work`.
void write_instance_csv(std::ostream& out, const Instance& instance);
/// Throws std::invalid_argument with the line number on malformed rows.
Instance read_instance_csv(std::istream& in);

/// Header `start,end,speed,job_id`; job_id is empty for idle segments.
void write_schedule_csv(std::ostream& out, const SpeedSchedule& schedule);
SpeedSchedule read_schedule_csv(std::istream& in);

struct ReportRow {
  std::string instance;
  std::string policy;
  std::optional<double> q;
  double alpha = 3.0;
  std::optional<double> b;
  double energy = 0.0;
  std::optional<double> energy_over_yds;
  double max_speed = 0.0;
  std::optional<double> max_temp;
  bool feasible = true;
};

/// Header `instance,policy,q,alpha,b,energy,energy_over_yds,max_speed,max_temp,feasible`.
/// Missing optionals are written as empty fields.
void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows);

void write_misses_csv(std::ostream& out, const std::vector<DeadlineMiss>& misses);

}  // namespace speedscale
