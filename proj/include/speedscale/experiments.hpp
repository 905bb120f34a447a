#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "speedscale/io.hpp"
#include "speedscale/metrics.hpp"
#include "speedscale/model.hpp"
#include "speedscale/online.hpp"
#include "speedscale/workload.hpp"

namespace speedscale {

// In-memory experiment runners shared by the CLI and the test suites, plus
// cmd_* wrappers that read inputs from disk and write CSV/JSON outputs.

struct TracePipeline {
  int stride = 20;
  int offset = 6;
  int days = 5;
  double day_length = kSecondsPerDay;
};

struct GenOutput {
  Instance instance;
  std::size_t records = 0;  // after decimation and replication
  std::size_t skipped_lines = 0;
};

/// parse -> substitute -> decimate -> replicate -> generate.
GenOutput generate_from_trace(std::istream& trace, const TracePipeline& pipeline, const WorkloadSpec& spec);

/// A named schedule produced by one algorithm.
struct PolicyRun {
  std::string name;  // "YDS", "AVR", "OA", "qOA", "BKP-ev", "BKP-ep"
  std::optional<double> q;
  SpeedSchedule schedule;
  std::vector<DeadlineMiss> misses;
  std::size_t evaluations = 0;
};

struct RaceConfig {
  double q = 1.5;
  double tick = 1.0;
};

/// YDS followed by AVR, OA, qOA(q), BKP-ev, BKP-ep. Schedules do not depend on alpha.
std::vector<PolicyRun> run_race(const Instance& instance, const RaceConfig& config);

/// One report row per run, energies normalised by the YDS run (which must be first).
std::vector<ReportRow> race_report(const std::string& label, const Instance& instance,
                                   const std::vector<PolicyRun>& runs, double alpha,
                                   const std::optional<CoolingModel>& cooling = std::nullopt);

/// lo, lo+step, ..., hi (inclusive up to rounding); values rounded to 1e-9.
std::vector<double> make_grid(double lo, double hi, double step);

struct SweepPoint {
  double q = 1.0;
  double energy = 0.0;
  bool feasible = true;
};

struct SweepQResult {
  std::vector<SweepPoint> points;
  double argmin_q = 1.0;  // first grid point with the least energy
};

SweepQResult run_sweep_q(const Instance& instance, double alpha, const std::vector<double>& q_grid, double tick);

struct TempPoint {
  std::string policy;
  double b = 0.0;
  double max_temp = 0.0;
};

/// Default cooling grid: decades 1e-4 .. 10 per second.
std::vector<double> default_b_grid();

/// Points with b*dt >= 1 are skipped and their b values returned in `skipped`.
std::vector<TempPoint> run_sweep_temp(const std::vector<PolicyRun>& runs, double alpha, const std::vector<double>& b_grid,
                                      double dt, std::vector<double>* skipped = nullptr);

// ---- on-disk commands -------------------------------------------------------

struct GenCommand {
  std::filesystem::path trace;
  std::filesystem::path out;  // instance CSV; metadata goes to <stem>.meta.json beside it
  TracePipeline pipeline;
  WorkloadSpec spec;
};

struct RaceCommand {
  std::filesystem::path instance;
  std::filesystem::path out_dir;
  std::vector<double> alphas{3.0};
  RaceConfig config;
  std::optional<double> b;  // fills max_temp when given
  bool schedules = true;
};

struct SweepQCommand {
  std::filesystem::path instance;
  std::filesystem::path out_dir;
  double alpha = 3.0;
  double q_lo = 1.0;
  double q_hi = 9.0;
  double q_step = 0.1;
  double tick = 1.0;
};

struct SweepTempCommand {
  std::filesystem::path instance;
  std::filesystem::path out_dir;
  double alpha = 3.0;
  std::vector<double> b_grid = default_b_grid();
  double dt = 0.1;
  std::vector<std::string> policies{"YDS", "qOA", "AVR", "BKP-ev", "BKP-ep"};
  RaceConfig config;
};

struct SimulateCommand {
  std::filesystem::path instance;
  std::filesystem::path out_dir;
  Policy policy = Policy::OA;
  double q = 1.0;
  double tick = 1.0;
  double alpha = 3.0;
};

/// Each command writes its outputs plus manifest.json into the output
/// directory (or beside the instance for gen) and returns a short summary.
std::string cmd_gen(const GenCommand& cmd);
std::string cmd_race(const RaceCommand& cmd);
std::string cmd_sweep_q(const SweepQCommand& cmd);
std::string cmd_sweep_temp(const SweepTempCommand& cmd);
std::string cmd_simulate(const SimulateCommand& cmd);

/// Writes the synthetic trace to `path`.
void write_synthetic_trace_file(const std::filesystem::path& path, std::uint64_t seed);

}  // namespace speedscale
