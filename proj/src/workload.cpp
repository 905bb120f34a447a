#include "speedscale/workload.hpp"

#include <cmath>
#include <stdexcept>

namespace speedscale {

std::string_view to_string(WorkloadKind kind) {
  switch (kind) {
    case WorkloadKind::Flat: return "flat";
    case WorkloadKind::FixedSpan: return "fixed_span";
    case WorkloadKind::ModeratelySpiky: return "moderately_spiky";
    case WorkloadKind::HighlySpiky: return "highly_spiky";
  }
  return "unknown";
}

WorkloadKind parse_workload_kind(std::string_view name) {
  std::string n(name);
  for (char& c : n) {
    if (c == '-') c = '_';
  }
  if (n == "flat") return WorkloadKind::Flat;
  if (n == "fixed_span" || n == "fixed") return WorkloadKind::FixedSpan;
  if (n == "moderately_spiky" || n == "moderate") return WorkloadKind::ModeratelySpiky;
  if (n == "highly_spiky" || n == "high") return WorkloadKind::HighlySpiky;
  throw std::invalid_argument("unknown workload kind: " + std::string(name));
}

WorkloadSpec WorkloadSpec::defaults(WorkloadKind kind) {
  WorkloadSpec spec;
  spec.kind = kind;
  spec.scale = kind == WorkloadKind::ModeratelySpiky ? 0.1 : 0.4;
  return spec;
}

void WorkloadSpec::validate() const {
  if (!(scale > 0.0)) throw std::invalid_argument("workload scale S must be positive");
  if (!(fixed_span > 0.0)) throw std::invalid_argument("fixed span must be positive");
  if (!(heavy_len > 0.0) || !(light_len > heavy_len)) {
    throw std::invalid_argument("interval lengths must satisfy L > H > 0");
  }
}

double Rng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

namespace {

double record_work(const TraceRecord& r) {
  if (!r.bytes || *r.bytes <= 0) {
    throw std::invalid_argument("workload generation needs cleaned records (bytes >= 1)");
  }
  return static_cast<double>(*r.bytes);
}

}  // namespace

Instance gen_flat(const std::vector<TraceRecord>& records, double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("gen_flat: S must be positive");
  std::vector<Job> jobs;
  jobs.reserve(records.size());
  for (const auto& r : records) {
    const double w = record_work(r);
    jobs.push_back({0, r.timestamp, r.timestamp + scale * w, w});
  }
  return Instance(std::move(jobs));
}

Instance gen_fixed_span(const std::vector<TraceRecord>& records, double span) {
  if (!(span > 0.0)) throw std::invalid_argument("gen_fixed_span: span must be positive");
  std::vector<Job> jobs;
  jobs.reserve(records.size());
  for (const auto& r : records) {
    jobs.push_back({0, r.timestamp, r.timestamp + span, record_work(r)});
  }
  return Instance(std::move(jobs));
}

Instance gen_moderately_spiky(const std::vector<TraceRecord>& records) { return gen_flat(records, 0.1); }

double triangle(double x, double h_start, double heavy_len) {
  if (x < h_start || x >= h_start + heavy_len) return 0.0;
  return 2.0 * (1.0 - std::abs(2.0 * (x - h_start) / heavy_len - 1.0));
}

std::optional<double> heavy_interval_start(double t, double light_len, double heavy_len) {
  const double period = light_len + heavy_len;
  const double cycle = std::floor(t / period);
  const double offset = t - cycle * period;
  if (offset < light_len) return std::nullopt;
  return cycle * period + light_len;
}

Instance gen_highly_spiky(const std::vector<TraceRecord>& records, double scale, double light_len,
                          double heavy_len, Rng& rng) {
  if (!(scale > 0.0)) throw std::invalid_argument("gen_highly_spiky: S must be positive");
  if (!(heavy_len > 0.0) || !(light_len > heavy_len)) {
    throw std::invalid_argument("gen_highly_spiky: need L > H > 0");
  }
  std::vector<Job> jobs;
  jobs.reserve(records.size() * 2);
  for (const auto& r : records) {
    const double w = record_work(r);
    const Job base{0, r.timestamp, r.timestamp + scale * w, w};
    jobs.push_back(base);

    const auto h_start = heavy_interval_start(r.timestamp, light_len, heavy_len);
    if (!h_start) continue;
    const int extra = static_cast<int>(std::ceil(triangle(r.timestamp, *h_start, heavy_len)));
    const double base_span = base.deadline - base.release;
    for (int k = 0; k < extra; ++k) {
      double n = rng.uniform_0_2();
      while (n == 1.0) n = rng.uniform_0_2();  // an exact copy of the base job would be redundant
      jobs.push_back({0, base.release, base.release + n * base_span, w});
    }
  }
  return Instance(std::move(jobs));
}

Instance generate(const std::vector<TraceRecord>& records, const WorkloadSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case WorkloadKind::Flat: return gen_flat(records, spec.scale);
    case WorkloadKind::FixedSpan: return gen_fixed_span(records, spec.fixed_span);
    case WorkloadKind::ModeratelySpiky: return gen_flat(records, spec.scale);
    case WorkloadKind::HighlySpiky: {
      Rng rng(spec.seed);
      return gen_highly_spiky(records, spec.scale, spec.light_len, spec.heavy_len, rng);
    }
  }
  throw std::logic_error("unhandled workload kind");
}

}  // namespace speedscale
