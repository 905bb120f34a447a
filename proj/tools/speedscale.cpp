// speedscale: workload generation and speed-scaling experiments from the command line.
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "speedscale/experiments.hpp"

using namespace speedscale;

int main(int argc, char** argv) {
  CLI::App app{"Speed scaling simulator: YDS, AVR, OA/qOA, BKP on trace-driven workloads"};
  app.require_subcommand(1);

  GenCommand gen;
  std::string kind = "flat";
  std::optional<double> scale;
  auto* g = app.add_subcommand("gen", "Build an instance CSV from an epa-http style trace");
  g->add_option("--trace", gen.trace, "Trace file")->required();
  g->add_option("--out", gen.out, "Instance CSV to write")->required();
  g->add_option("--kind", kind, "flat | fixed_span | moderately_spiky | highly_spiky")->capture_default_str();
  g->add_option("--scale", scale, "S, seconds of span per byte (default 0.4; 0.1 for moderately_spiky)");
  g->add_option("--span", gen.spec.fixed_span, "Span for fixed_span")->capture_default_str();
  g->add_option("--light", gen.spec.light_len, "L, light interval length")->capture_default_str();
  g->add_option("--heavy", gen.spec.heavy_len, "H, heavy interval length")->capture_default_str();
  g->add_option("--seed", gen.spec.seed, "RNG seed")->capture_default_str();
  g->add_option("--stride", gen.pipeline.stride, "Keep every stride-th request")->capture_default_str();
  g->add_option("--offset", gen.pipeline.offset, "1-based position of the first kept request")->capture_default_str();
  g->add_option("--days", gen.pipeline.days, "Copies of the day")->capture_default_str();
  g->add_option("--day-length", gen.pipeline.day_length, "Shift between copies, seconds")->capture_default_str();

  RaceCommand race;
  auto* r = app.add_subcommand("race", "Run YDS and every online policy, report energy/speed/temperature");
  r->add_option("--instance", race.instance, "Instance CSV")->required();
  r->add_option("--out", race.out_dir, "Output directory")->required();
  r->add_option("--alpha", race.alphas, "Power exponents")->capture_default_str();
  r->add_option("--q", race.config.q, "qOA multiplier")->capture_default_str();
  r->add_option("--tick", race.config.tick, "Policy evaluation step, seconds")->capture_default_str();
  r->add_option("--b", race.b, "Cooling parameter for the max_temp column");
  bool no_schedules = false;
  r->add_flag("--no-schedules", no_schedules, "Skip the per-policy schedule CSVs");

  SweepQCommand sq;
  auto* s = app.add_subcommand("sweep-q", "Energy of qOA over a q grid");
  s->add_option("--instance", sq.instance, "Instance CSV")->required();
  s->add_option("--out", sq.out_dir, "Output directory")->required();
  s->add_option("--alpha", sq.alpha)->capture_default_str();
  s->add_option("--q-lo", sq.q_lo)->capture_default_str();
  s->add_option("--q-hi", sq.q_hi)->capture_default_str();
  s->add_option("--q-step", sq.q_step)->capture_default_str();
  s->add_option("--tick", sq.tick)->capture_default_str();

  SweepTempCommand st;
  auto* t = app.add_subcommand("sweep-temp", "Maximum temperature per policy over a cooling grid");
  t->add_option("--instance", st.instance, "Instance CSV")->required();
  t->add_option("--out", st.out_dir, "Output directory")->required();
  t->add_option("--alpha", st.alpha)->capture_default_str();
  t->add_option("--b", st.b_grid, "Cooling parameters (default 1e-4 .. 10 by decades)");
  t->add_option("--dt", st.dt, "Euler step, seconds")->capture_default_str();
  t->add_option("--policies", st.policies, "YDS AVR OA qOA BKP-ev BKP-ep")->capture_default_str();
  t->add_option("--q", st.config.q)->capture_default_str();
  t->add_option("--tick", st.config.tick)->capture_default_str();

  SimulateCommand sim;
  std::string policy = "oa";
  auto* m = app.add_subcommand("simulate", "Simulate one online policy");
  m->add_option("--instance", sim.instance, "Instance CSV")->required();
  m->add_option("--out", sim.out_dir, "Output directory")->required();
  m->add_option("--policy", policy, "avr | oa | qoa | bkp-ev | bkp-ep")->capture_default_str();
  m->add_option("--q", sim.q)->capture_default_str();
  m->add_option("--tick", sim.tick)->capture_default_str();
  m->add_option("--alpha", sim.alpha)->capture_default_str();

  std::filesystem::path synth_out;
  std::uint64_t synth_seed = 20090101;
  auto* y = app.add_subcommand("synth-trace", "Write a synthetic one-day trace in epa-http layout");
  y->add_option("--out", synth_out)->required();
  y->add_option("--seed", synth_seed)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    std::string summary;
    if (*g) {
      gen.spec.kind = parse_workload_kind(kind);
      gen.spec.scale = scale.value_or(WorkloadSpec::defaults(gen.spec.kind).scale);
      summary = cmd_gen(gen);
    } else if (*r) {
      race.schedules = !no_schedules;
      summary = cmd_race(race);
    } else if (*s) {
      summary = cmd_sweep_q(sq);
    } else if (*t) {
      summary = cmd_sweep_temp(st);
    } else if (*m) {
      sim.policy = parse_policy(policy);
      summary = cmd_simulate(sim);
    } else if (*y) {
      write_synthetic_trace_file(synth_out, synth_seed);
      summary = "wrote " + synth_out.string();
    }
    std::cout << summary << '\n';
  } catch (const std::exception& e) {
    std::cerr << "speedscale: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
