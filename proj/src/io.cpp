#include "speedscale/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string_view>

namespace speedscale {
namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string_view trim_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

void expect_header(std::istream& in, std::string_view header) {
  std::string line;
  if (!std::getline(in, line) || trim_cr(line) != header) {
    throw std::invalid_argument("expected CSV header: " + std::string(header));
  }
}

std::string optional_field(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

[[noreturn]] void bad_row(std::size_t line_no, const std::string& why) {
  throw std::invalid_argument("line " + std::to_string(line_no) + ": " + why);
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

void write_instance_csv(std::ostream& out, const Instance& instance) {
  out << "id,release,deadline,work\n";
  for (const Job& j : instance.jobs()) {
    out << j.id << ',' << format_double(j.release) << ',' << format_double(j.deadline) << ','
        << format_double(j.work) << '\n';
  }
}

Instance read_instance_csv(std::istream& in) {
  expect_header(in, "id,release,deadline,work");
  std::vector<Job> jobs;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim_cr(line);
    if (row.empty()) continue;
    const auto f = split(row);
    if (f.size() != 4) bad_row(line_no, "expected 4 fields");
    try {
      Job j;
      j.id = static_cast<JobId>(jobs.size());
      j.release = parse_double(f[1]);
      j.deadline = parse_double(f[2]);
      j.work = parse_double(f[3]);
      validate(j);
      jobs.push_back(j);
    } catch (const std::invalid_argument& e) {
      bad_row(line_no, e.what());
    }
  }
  return Instance(std::move(jobs));
}

void write_schedule_csv(std::ostream& out, const SpeedSchedule& schedule) {
  out << "start,end,speed,job_id\n";
  for (const Segment& s : schedule.segments()) {
    out << format_double(s.start) << ',' << format_double(s.end) << ',' << format_double(s.speed) << ',';
    if (s.job) out << *s.job;
    out << '\n';
  }
}

SpeedSchedule read_schedule_csv(std::istream& in) {
  expect_header(in, "start,end,speed,job_id");
  std::vector<Segment> segments;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim_cr(line);
    if (row.empty()) continue;
    const auto f = split(row);
    if (f.size() != 4) bad_row(line_no, "expected 4 fields");
    try {
      Segment s;
      s.start = parse_double(f[0]);
      s.end = parse_double(f[1]);
      s.speed = parse_double(f[2]);
      if (!f[3].empty()) {
        JobId id = 0;
        const auto res = std::from_chars(f[3].data(), f[3].data() + f[3].size(), id);
        if (res.ec != std::errc() || res.ptr != f[3].data() + f[3].size()) bad_row(line_no, "bad job id");
        s.job = id;
      }
      segments.push_back(s);
    } catch (const std::invalid_argument& e) {
      bad_row(line_no, e.what());
    }
  }
  return SpeedSchedule(std::move(segments));
}

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  out << "instance,policy,q,alpha,b,energy,energy_over_yds,max_speed,max_temp,feasible\n";
  for (const ReportRow& r : rows) {
    out << r.instance << ',' << r.policy << ',' << optional_field(r.q) << ',' << format_double(r.alpha) << ','
        << optional_field(r.b) << ',' << format_double(r.energy) << ',' << optional_field(r.energy_over_yds) << ','
        << format_double(r.max_speed) << ',' << optional_field(r.max_temp) << ',' << (r.feasible ? "true" : "false")
        << '\n';
  }
}

void write_misses_csv(std::ostream& out, const std::vector<DeadlineMiss>& misses) {
  out << "job_id,residual\n";
  for (const DeadlineMiss& m : misses) out << m.job << ',' << format_double(m.residual) << '\n';
}

}  // namespace speedscale
