#include "speedscale/experiments.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "speedscale/synthetic.hpp"
#include "speedscale/trace.hpp"
#include "speedscale/yds.hpp"

namespace speedscale {
namespace {

using nlohmann::ordered_json;

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read instance " + path.string());
  return read_instance_csv(in);
}

void write_json(const std::filesystem::path& path, const ordered_json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

ordered_json race_config_json(const RaceConfig& c) { return {{"q", c.q}, {"tick", c.tick}}; }

PolicyRun online_run(const Instance& instance, std::string name, Policy policy, std::optional<double> q, double tick) {
  SimConfig cfg;
  cfg.policy = policy;
  cfg.tick = tick;
  cfg.q = q.value_or(1.0);
  SimResult sim = simulate(instance, cfg);
  return {std::move(name), q, std::move(sim.schedule), std::move(sim.misses), sim.evaluations};
}

PolicyRun run_named(const Instance& instance, const std::string& name, const RaceConfig& config) {
  if (name == "YDS") return {"YDS", std::nullopt, yds_schedule(instance), {}, 0};
  const Policy policy = parse_policy(name);
  switch (policy) {
    case Policy::AVR: return online_run(instance, "AVR", policy, std::nullopt, config.tick);
    case Policy::OA: return online_run(instance, "OA", policy, std::nullopt, config.tick);
    case Policy::QOA: return online_run(instance, "qOA", policy, config.q, config.tick);
    case Policy::BKP_EV: return online_run(instance, "BKP-ev", policy, std::nullopt, config.tick);
    case Policy::BKP_EP: return online_run(instance, "BKP-ep", policy, std::nullopt, config.tick);
  }
  throw std::logic_error("unhandled policy");
}

std::string file_label(const std::string& name) {
  std::string out;
  for (char c : name) out.push_back(c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

}  // namespace

GenOutput generate_from_trace(std::istream& trace, const TracePipeline& pipeline, const WorkloadSpec& spec) {
  ParsedTrace parsed = parse_trace(trace);
  if (parsed.records.empty()) throw std::runtime_error("trace has no parseable records");
  auto records = substitute_empty_responses(std::move(parsed.records));
  records = decimate(records, pipeline.stride, pipeline.offset);
  records = replicate_days(records, pipeline.days, pipeline.day_length);
  GenOutput out;
  out.records = records.size();
  out.skipped_lines = parsed.skipped;
  out.instance = generate(records, spec);
  return out;
}

std::vector<PolicyRun> run_race(const Instance& instance, const RaceConfig& config) {
  std::vector<PolicyRun> runs;
  for (const char* name : {"YDS", "AVR", "OA", "qOA", "BKP-ev", "BKP-ep"}) runs.push_back(run_named(instance, name, config));
  return runs;
}

std::vector<ReportRow> race_report(const std::string& label, const Instance& instance,
                                   const std::vector<PolicyRun>& runs, double alpha,
                                   const std::optional<CoolingModel>& cooling) {
  if (runs.empty() || runs.front().name != "YDS") throw std::invalid_argument("race_report: YDS run must come first");
  const PowerModel power{alpha};
  const double opt = energy(runs.front().schedule, power);
  std::vector<ReportRow> rows;
  for (const PolicyRun& run : runs) {
    const MetricsReport m = measure(run.schedule, instance, power, cooling);
    ReportRow row;
    row.instance = label;
    row.policy = run.name;
    row.q = run.q;
    row.alpha = alpha;
    if (cooling) row.b = cooling->b;
    row.energy = m.energy;
    if (opt > 0.0) row.energy_over_yds = &run == &runs.front() ? 1.0 : m.energy / opt;
    row.max_speed = m.max_speed;
    row.max_temp = m.max_temperature;
    row.feasible = m.feasible && run.misses.empty();
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> make_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw std::invalid_argument("grid needs step > 0 and hi >= lo");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> grid;
  for (std::size_t i = 0; i < count; ++i) {
    grid.push_back(std::round((lo + static_cast<double>(i) * step) * 1e9) / 1e9);
  }
  return grid;
}

SweepQResult run_sweep_q(const Instance& instance, double alpha, const std::vector<double>& q_grid, double tick) {
  if (q_grid.empty()) throw std::invalid_argument("empty q grid");
  const PowerModel power{alpha};
  SweepQResult result;
  double best = std::numeric_limits<double>::infinity();
  for (double q : q_grid) {
    if (!(q >= 1.0)) throw std::invalid_argument("q grid must start at 1 or above");
    SimConfig cfg{Policy::QOA, tick, q};
    const SimResult sim = simulate(instance, cfg);
    const double e = energy(sim.schedule, power);
    result.points.push_back({q, e, sim.feasible()});
    if (e < best) {
      best = e;
      result.argmin_q = q;
    }
  }
  return result;
}

std::vector<double> default_b_grid() { return {1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0}; }

std::vector<TempPoint> run_sweep_temp(const std::vector<PolicyRun>& runs, double alpha, const std::vector<double>& b_grid,
                                      double dt, std::vector<double>* skipped) {
  const PowerModel power{alpha};
  std::vector<TempPoint> points;
  for (double b : b_grid) {
    const CoolingModel cooling{b, dt, 0.0};
    cooling.validate();
    if (!cooling.stable()) {
      if (skipped) skipped->push_back(b);
      continue;
    }
    for (const PolicyRun& run : runs) points.push_back({run.name, b, max_temperature(run.schedule, cooling, power)});
  }
  return points;
}

std::string cmd_gen(const GenCommand& cmd) {
  std::ifstream trace(cmd.trace, std::ios::binary);
  if (!trace) throw std::runtime_error("cannot read trace " + cmd.trace.string());
  const GenOutput gen = generate_from_trace(trace, cmd.pipeline, cmd.spec);
  {
    auto out = open_out(cmd.out);
    write_instance_csv(out, gen.instance);
  }
  std::filesystem::path meta = cmd.out;
  meta.replace_extension(".meta.json");
  const ordered_json j = {
      {"command", "gen"},
      {"trace", cmd.trace.string()},
      {"kind", std::string(to_string(cmd.spec.kind))},
      {"scale", cmd.spec.scale},
      {"fixed_span", cmd.spec.fixed_span},
      {"light_len", cmd.spec.light_len},
      {"heavy_len", cmd.spec.heavy_len},
      {"seed", cmd.spec.seed},
      {"rng", std::string(Rng::kName)},
      {"stride", cmd.pipeline.stride},
      {"offset", cmd.pipeline.offset},
      {"days", cmd.pipeline.days},
      {"day_length", cmd.pipeline.day_length},
      {"records", gen.records},
      {"skipped_lines", gen.skipped_lines},
      {"jobs", gen.instance.size()},
      {"horizon", gen.instance.horizon()},
  };
  write_json(meta, j);
  std::ostringstream msg;
  msg << "wrote " << gen.instance.size() << " jobs to " << cmd.out.string() << " (" << gen.skipped_lines
      << " trace lines skipped)";
  return msg.str();
}

std::string cmd_race(const RaceCommand& cmd) {
  if (cmd.alphas.empty()) throw std::invalid_argument("race needs at least one alpha");
  const Instance instance = load_instance(cmd.instance);
  const std::vector<PolicyRun> runs = run_race(instance, cmd.config);
  std::optional<CoolingModel> cooling;
  if (cmd.b) cooling = CoolingModel{*cmd.b, 0.1, 0.0};
  const std::string label = cmd.instance.stem().string();

  std::vector<ReportRow> rows;
  for (double alpha : cmd.alphas) {
    auto part = race_report(label, instance, runs, alpha, cooling);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  {
    auto out = open_out(cmd.out_dir / "report.csv");
    write_report_csv(out, rows);
  }
  ordered_json outputs = ordered_json::array({"report.csv"});
  std::size_t misses = 0;
  for (const PolicyRun& run : runs) {
    misses += run.misses.size();
    if (cmd.schedules) {
      const std::string name = "schedule_" + file_label(run.name) + ".csv";
      auto out = open_out(cmd.out_dir / name);
      write_schedule_csv(out, run.schedule);
      outputs.push_back(name);
    }
    if (!run.misses.empty()) {
      const std::string name = "misses_" + file_label(run.name) + ".csv";
      auto out = open_out(cmd.out_dir / name);
      write_misses_csv(out, run.misses);
      outputs.push_back(name);
    }
  }
  write_json(cmd.out_dir / "manifest.json",
             {{"command", "race"},
              {"instance", cmd.instance.string()},
              {"alphas", cmd.alphas},
              {"config", race_config_json(cmd.config)},
              {"b", cmd.b ? ordered_json(*cmd.b) : ordered_json(nullptr)},
              {"outputs", outputs}});
  std::ostringstream msg;
  msg << "raced " << runs.size() << " algorithms on " << instance.size() << " jobs; " << misses << " deadline misses";
  return msg.str();
}

std::string cmd_sweep_q(const SweepQCommand& cmd) {
  const Instance instance = load_instance(cmd.instance);
  const std::vector<double> grid = make_grid(cmd.q_lo, cmd.q_hi, cmd.q_step);
  const SweepQResult res = run_sweep_q(instance, cmd.alpha, grid, cmd.tick);
  {
    auto out = open_out(cmd.out_dir / "sweep_q.csv");
    out << "q,energy,feasible\n";
    for (const SweepPoint& p : res.points) {
      out << format_double(p.q) << ',' << format_double(p.energy) << ',' << (p.feasible ? "true" : "false") << '\n';
    }
  }
  write_json(cmd.out_dir / "manifest.json", {{"command", "sweep-q"},
                                             {"instance", cmd.instance.string()},
                                             {"alpha", cmd.alpha},
                                             {"q_lo", cmd.q_lo},
                                             {"q_hi", cmd.q_hi},
                                             {"q_step", cmd.q_step},
                                             {"tick", cmd.tick},
                                             {"points", res.points.size()},
                                             {"argmin_q", res.argmin_q},
                                             {"outputs", {"sweep_q.csv"}}});
  std::ostringstream msg;
  msg << res.points.size() << " q values, argmin q = " << format_double(res.argmin_q);
  return msg.str();
}

std::string cmd_sweep_temp(const SweepTempCommand& cmd) {
  if (cmd.b_grid.empty()) throw std::invalid_argument("empty b grid");
  const Instance instance = load_instance(cmd.instance);
  std::vector<PolicyRun> runs;
  for (const std::string& name : cmd.policies) runs.push_back(run_named(instance, name, cmd.config));
  std::vector<double> skipped;
  const auto points = run_sweep_temp(runs, cmd.alpha, cmd.b_grid, cmd.dt, &skipped);
  {
    auto out = open_out(cmd.out_dir / "sweep_temp.csv");
    out << "policy,b,max_temp\n";
    for (const TempPoint& p : points) out << p.policy << ',' << format_double(p.b) << ',' << format_double(p.max_temp) << '\n';
  }
  write_json(cmd.out_dir / "manifest.json", {{"command", "sweep-temp"},
                                             {"instance", cmd.instance.string()},
                                             {"alpha", cmd.alpha},
                                             {"b_grid", cmd.b_grid},
                                             {"dt", cmd.dt},
                                             {"skipped_unstable_b", skipped},
                                             {"policies", cmd.policies},
                                             {"config", race_config_json(cmd.config)},
                                             {"outputs", {"sweep_temp.csv"}}});
  std::ostringstream msg;
  msg << points.size() << " temperature points";
  for (double b : skipped) msg << "; warning: b=" << format_double(b) << " skipped (b*dt >= 1)";
  return msg.str();
}

std::string cmd_simulate(const SimulateCommand& cmd) {
  const Instance instance = load_instance(cmd.instance);
  SimConfig cfg{cmd.policy, cmd.tick, cmd.policy == Policy::QOA ? cmd.q : 1.0};
  const SimResult sim = simulate(instance, cfg);
  const MetricsReport m = measure(sim.schedule, instance, PowerModel{cmd.alpha});
  {
    auto out = open_out(cmd.out_dir / "schedule.csv");
    write_schedule_csv(out, sim.schedule);
  }
  {
    auto out = open_out(cmd.out_dir / "misses.csv");
    write_misses_csv(out, sim.misses);
  }
  ReportRow row;
  row.instance = cmd.instance.stem().string();
  row.policy = std::string(to_string(cmd.policy));
  if (cmd.policy == Policy::QOA) row.q = cmd.q;
  row.alpha = cmd.alpha;
  row.energy = m.energy;
  row.max_speed = m.max_speed;
  row.feasible = m.feasible && sim.feasible();
  {
    auto out = open_out(cmd.out_dir / "report.csv");
    write_report_csv(out, {row});
  }
  write_json(cmd.out_dir / "manifest.json", {{"command", "simulate"},
                                             {"instance", cmd.instance.string()},
                                             {"policy", std::string(to_string(cmd.policy))},
                                             {"q", cfg.q},
                                             {"tick", cmd.tick},
                                             {"alpha", cmd.alpha},
                                             {"evaluations", sim.evaluations},
                                             {"outputs", {"schedule.csv", "misses.csv", "report.csv"}}});
  std::ostringstream msg;
  msg << to_string(cmd.policy) << ": energy " << format_double(m.energy) << ", max speed "
      << format_double(m.max_speed) << ", " << sim.misses.size() << " deadline misses";
  return msg.str();
}

void write_synthetic_trace_file(const std::filesystem::path& path, std::uint64_t seed) {
  SyntheticTraceParams params;
  params.seed = seed;
  auto out = open_out(path);
  write_synthetic_trace(out, params);
}

}  // namespace speedscale
