// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance [trace-file]   (defaults to the bundled synthetic trace)

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "speedscale/experiments.hpp"
#include "speedscale/metrics.hpp"
#include "speedscale/online.hpp"
#include "speedscale/yds.hpp"
#include "support.hpp"

using namespace speedscale;
namespace fs = std::filesystem;

namespace {

constexpr std::array kKinds{WorkloadKind::Flat, WorkloadKind::FixedSpan, WorkloadKind::ModeratelySpiky,
                            WorkloadKind::HighlySpiky};
constexpr std::array kOnline{Policy::AVR, Policy::OA, Policy::QOA, Policy::BKP_EV, Policy::BKP_EP};

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << what << " | " << detail << std::endl;
}

std::string fmt(double x, int digits = 4) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double total_residual(const std::vector<DeadlineMiss>& misses) {
  double r = 0.0;
  for (const auto& m : misses) r += m.residual;
  return r;
}

bool same_schedule(const SpeedSchedule& a, const SpeedSchedule& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Segment& x = a.segments()[i];
    const Segment& y = b.segments()[i];
    if (x.start != y.start || x.end != y.end || x.speed != y.speed || x.job != y.job) return false;
  }
  return true;
}

/// Names sorted by value, ties broken by name.
std::vector<std::string> order_of(const std::map<std::string, double>& values) {
  std::vector<std::pair<double, std::string>> v;
  for (const auto& [name, x] : values) v.emplace_back(x, name);
  std::sort(v.begin(), v.end());
  std::vector<std::string> out;
  for (const auto& [x, name] : v) out.push_back(name);
  return out;
}

std::string join(const std::vector<std::string>& names) {
  std::string s;
  for (const auto& n : names) s += (s.empty() ? "" : "<") + n;
  return s;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Workload {
  WorkloadKind kind;
  Instance instance;
  SpeedSchedule yds;
  std::map<Policy, SimResult> runs;  // at tick 1, qOA with q = 1.5
  SimResult qoa154;
  double worst_v_minus_p = -std::numeric_limits<double>::infinity();
  std::size_t boundaries = 0;
};

SimResult run_checked(const Instance& inst, const SimConfig& cfg, Workload* w) {
  return simulate(inst, cfg, [w](const PolicyState& st, double) {
    w->worst_v_minus_p = std::max(w->worst_v_minus_p, bkp_v(st) - bkp_p(st));
    ++w->boundaries;
  });
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path trace = argc > 1 ? fs::path(argv[1]) : fs::path(SPEEDSCALE_DATA_DIR) / "synthetic-epa-http.txt";
  const auto start = std::chrono::steady_clock::now();
  const PowerModel cube{3.0};

  // ---- 1: YDS against the brute-force oracle ----
  {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 gen(2024);
    int bad = 0;
    double worst = 0.0;
    for (int rep = 0; rep < 200; ++rep) {
      const Instance inst = testing::random_instance(gen, 1 + rep % 5, 10, 10, 10);
      const double yds = energy(yds_schedule(inst), cube);
      const double oracle = testing::oracle_min_energy(testing::to_vector(inst), 3.0);
      worst = std::max(worst, yds / oracle - 1.0);
      if (!(yds <= oracle * (1 + 1e-4))) ++bad;
    }
    const double secs = seconds_since(t0);
    report(1, bad == 0 && secs < 60.0, "YDS <= brute-force optimum on 200 random instances",
           std::to_string(bad) + " above oracle, worst rel excess " + fmt(worst) + ", " + fmt(secs, 3) + " s");
  }

  // Trace workloads, every online policy, v/p checked at each boundary.
  std::vector<Workload> loads;
  for (WorkloadKind kind : kKinds) {
    std::ifstream in(trace);
    if (!in) {
      std::cerr << "cannot open trace " << trace << "\n";
      return 2;
    }
    Workload w{kind, generate_from_trace(in, {}, WorkloadSpec::defaults(kind)).instance, {}, {}, {}};
    w.yds = yds_schedule(w.instance);
    for (Policy p : kOnline) w.runs[p] = run_checked(w.instance, {p, 1.0, p == Policy::QOA ? 1.5 : 1.0}, &w);
    w.qoa154 = run_checked(w.instance, {Policy::QOA, 1.0, 1.54}, &w);
    std::cerr << to_string(kind) << ": n=" << w.instance.size() << ", simulated in " << fmt(seconds_since(start), 4)
              << " s\n";
    loads.push_back(std::move(w));
  }

  // Small random instances used alongside the trace workloads.
  std::vector<Workload> randoms;
  {
    std::mt19937_64 gen(77);
    for (int rep = 0; rep < 100; ++rep) {
      Workload w{WorkloadKind::Flat, testing::random_instance(gen, 2 + rep % 7, 20, 10, 10), {}, {}, {}};
      w.yds = yds_schedule(w.instance);
      for (Policy p : kOnline) w.runs[p] = run_checked(w.instance, {p, 1.0, p == Policy::QOA ? 1.5 : 1.0}, &w);
      w.qoa154 = run_checked(w.instance, {Policy::QOA, 1.0, 1.54}, &w);
      randoms.push_back(std::move(w));
    }
  }

  // ---- 2: feasibility at tick 1, misses shrink when the tick is halved ----
  {
    bool ok = true;
    std::string detail;
    int missing_runs = 0;
    for (const Workload& w : loads) {
      for (const auto& [p, res] : w.runs) {
        const auto check = verify_feasibility(res.schedule, w.instance);
        if (check.feasible()) continue;
        ++missing_runs;
        double prev = total_residual(check.misses) + static_cast<double>(check.violations.size());
        double tick = 1.0;
        for (int halving = 0; halving < 4 && prev > 0.0; ++halving) {
          tick /= 2.0;
          const SimResult finer = simulate(w.instance, {p, tick, p == Policy::QOA ? 1.5 : 1.0});
          const auto fc = verify_feasibility(finer.schedule, w.instance);
          const double now = total_residual(fc.misses) + static_cast<double>(fc.violations.size());
          if (!(now < prev)) ok = false;
          prev = now;
        }
        detail += std::string(to_string(w.kind)) + "/" + std::string(to_string(p)) + " ";
      }
    }
    report(2, ok, "all policies feasible on the four trace workloads at tick 1",
           missing_runs == 0 ? "20 of 20 runs feasible" : "misses (shrinking checked) in " + detail);
  }

  // ---- 3: ratios within the known bounds at alpha 3 ----
  {
    double worst_oa = 0, worst_avr = 0, worst_q = 0, worst_ev = 0;
    auto scan = [&](const Workload& w) {
      const double opt = energy(w.yds, cube);
      if (!(opt > 0.0)) return;
      worst_oa = std::max(worst_oa, energy(w.runs.at(Policy::OA).schedule, cube) / opt);
      worst_avr = std::max(worst_avr, energy(w.runs.at(Policy::AVR).schedule, cube) / opt);
      worst_q = std::max(worst_q, energy(w.qoa154.schedule, cube) / opt);
      worst_ev = std::max(worst_ev, energy(w.runs.at(Policy::BKP_EV).schedule, cube) / opt);
    };
    for (const Workload& w : loads) scan(w);
    for (const Workload& w : randoms) scan(w);
    const bool ok = worst_oa <= *known_ratio_bound_alpha3("OA") && worst_avr <= *known_ratio_bound_alpha3("AVR") &&
                    worst_q <= *known_ratio_bound_alpha3("qOA") && worst_ev <= *known_ratio_bound_alpha3("BKP");
    report(3, ok, "energy ratios within OA 27, AVR 108, qOA(1.54) 6.7, BKP-ev 135.6 (104 instances)",
           "worst OA " + fmt(worst_oa) + ", AVR " + fmt(worst_avr) + ", qOA(1.54) " + fmt(worst_q) + ", BKP-ev " +
               fmt(worst_ev));
  }

  // ---- 4: horse-race ordering at alpha 3 ----
  {
    bool yds_first = true;
    int ordered = 0;
    std::string detail;
    for (const Workload& w : loads) {
      const double opt = energy(w.yds, cube);
      std::array<double, 4> e{};
      const std::array chain{Policy::QOA, Policy::AVR, Policy::BKP_EV, Policy::BKP_EP};
      for (std::size_t i = 0; i < chain.size(); ++i) e[i] = energy(w.runs.at(chain[i]).schedule, cube);
      for (const auto& [p, res] : w.runs) yds_first = yds_first && opt <= energy(res.schedule, cube);
      const bool chain_ok = e[0] <= e[1] && e[1] <= e[2] && e[2] <= e[3];
      ordered += chain_ok ? 1 : 0;
      detail += std::string(to_string(w.kind)) + (chain_ok ? " ok" : " out of order") + " (" + fmt(e[0] / opt) + "/" +
                fmt(e[1] / opt) + "/" + fmt(e[2] / opt) + "/" + fmt(e[3] / opt) + "); ";
    }
    report(4, yds_first && ordered >= 3, "YDS <= every policy; qOA(1.5) <= AVR <= BKP-ev <= BKP-ep on >= 3 of 4 kinds",
           "YDS lowest " + std::string(yds_first ? "everywhere" : "NOT everywhere") + ", chain holds on " +
               std::to_string(ordered) + "/4: " + detail);
  }

  // ---- 5: v <= p at every evaluation boundary ----
  {
    double worst = -std::numeric_limits<double>::infinity();
    std::size_t boundaries = 0;
    for (const auto* set : {&loads, &randoms}) {
      for (const Workload& w : *set) {
        worst = std::max(worst, w.worst_v_minus_p);
        boundaries += w.boundaries;
      }
    }
    report(5, worst <= 1e-9, "v(t) <= p(t) + 1e-9 at every boundary of every simulation",
           std::to_string(boundaries) + " boundaries over 624 simulations, max v - p = " + fmt(worst));
  }

  // ---- 6: BKP-ev max speed against e times the max intensity ----
  {
    double worst = 0.0;
    auto scan = [&](const Workload& w) {
      const double intensity = find_critical_interval(w.instance).intensity;
      worst = std::max(worst, max_speed(w.runs.at(Policy::BKP_EV).schedule) / (std::numbers::e * intensity));
    };
    for (const Workload& w : loads) scan(w);
    for (const Workload& w : randoms) scan(w);
    report(6, worst <= 1.0 + 1e-6, "BKP-ev max speed <= e * max intensity * (1 + 1e-6) (104 instances)",
           "worst max speed / (e * intensity) = " + fmt(worst, 8));
  }

  // ---- 7: qOA with q = 1 is OA ----
  {
    int diff = 0;
    auto check = [&](const Workload& w) {
      const SimResult q1 = simulate(w.instance, {Policy::QOA, 1.0, 1.0});
      if (!same_schedule(q1.schedule, w.runs.at(Policy::OA).schedule) || q1.evaluations != w.runs.at(Policy::OA).evaluations)
        ++diff;
    };
    for (const Workload& w : loads) check(w);
    for (const Workload& w : randoms) check(w);
    report(7, diff == 0, "qOA(1) bit-identical to OA (104 instances)", std::to_string(diff) + " differing schedules");
  }

  // ---- 8: q sweep shape ----
  {
    const auto grid = make_grid(1.0, 9.0, 0.1);
    bool ok = grid.size() == 81;
    std::string detail = std::to_string(grid.size()) + " grid points; argmin";
    for (const Workload& w : loads) {
      const SweepQResult sweep = run_sweep_q(w.instance, 3.0, grid, 1.0);
      ok = ok && sweep.points.size() == 81;
      const double q = sweep.argmin_q;
      const bool low = w.kind == WorkloadKind::HighlySpiky || w.kind == WorkloadKind::FixedSpan;
      const bool kind_ok = low ? (q >= 1.0 && q <= 1.5) : q >= 2.0;
      ok = ok && kind_ok;
      detail += " " + std::string(to_string(w.kind)) + "=" + fmt(q, 3) + (kind_ok ? "" : " (want " + std::string(low ? "[1, 1.5]" : ">= 2") + ")");
    }
    report(8, ok, "q sweep 1..9 step 0.1: argmin in [1, 1.5] for highly_spiky/fixed_span, >= 2 for flat/moderately_spiky",
           detail);
  }

  // ---- 9: max-temperature order matches energy order ----
  {
    const std::vector<double> b_grid{1e-4, 1e-3, 1e-2, 1e-1, 1.0};
    const CoolingModel base;  // dt = 0.1
    int cases = 0;
    int matched = 0;
    std::string mismatches;
    for (const Workload& w : loads) {
      const std::map<std::string, const SpeedSchedule*> schedules{{"YDS", &w.yds},
                                                                   {"qOA", &w.runs.at(Policy::QOA).schedule},
                                                                   {"AVR", &w.runs.at(Policy::AVR).schedule},
                                                                   {"BKP-ev", &w.runs.at(Policy::BKP_EV).schedule},
                                                                   {"BKP-ep", &w.runs.at(Policy::BKP_EP).schedule}};
      for (double alpha : {2.0, 3.0, 4.0}) {
        const PowerModel power{alpha};
        std::map<std::string, double> energies;
        for (const auto& [name, s] : schedules) energies[name] = energy(*s, power);
        const auto energy_order = order_of(energies);
        for (double b : b_grid) {
          std::map<std::string, double> temps;
          for (const auto& [name, s] : schedules) temps[name] = max_temperature(*s, {b, base.dt, 0.0}, power);
          const auto temp_order = order_of(temps);
          ++cases;
          if (temp_order == energy_order) {
            ++matched;
          } else {
            mismatches += " [" + std::string(to_string(w.kind)) + " a=" + fmt(alpha, 1) + " b=" + fmt(b, 1) +
                          ": T " + join(temp_order) + " vs E " + join(energy_order) + "]";
          }
        }
      }
    }
    report(9, matched == cases, "max-temperature order equals energy order, alpha 2/3/4, b = 1e-4..1 (4 kinds)",
           std::to_string(matched) + "/" + std::to_string(cases) + " cases match" + mismatches);
  }

  // ---- 10: gen + race twice with identical seeds ----
  {
    const fs::path root = fs::temp_directory_path() / ("speedscale_accept_" + std::to_string(::getpid()));
    bool ok = true;
    std::size_t files = 0;
    std::array<std::map<std::string, std::string>, 2> outputs;
    for (int run = 0; run < 2; ++run) {
      const fs::path dir = root / ("run" + std::to_string(run));
      fs::create_directories(dir);
      for (WorkloadKind kind : {WorkloadKind::ModeratelySpiky, WorkloadKind::HighlySpiky}) {
        GenCommand gen;
        gen.trace = trace;
        gen.spec = WorkloadSpec::defaults(kind);
        gen.spec.seed = 99;
        gen.out = dir / (std::string(to_string(kind)) + ".csv");
        cmd_gen(gen);
        RaceCommand race;
        race.instance = gen.out;
        race.out_dir = dir / (std::string(to_string(kind)) + "_race");
        race.alphas = {2.0, 3.0};
        race.b = 0.01;
        cmd_race(race);
      }
      for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") {
          outputs[run][fs::relative(entry.path(), dir).string()] = read_file(entry.path());
        }
      }
    }
    files = outputs[0].size();
    ok = files > 0 && outputs[0] == outputs[1];
    fs::remove_all(root);
    report(10, ok, "cmd_gen + cmd_race twice with the same seeds give byte-identical CSVs",
           std::to_string(files) + " CSV files compared");
  }

  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " criteria FAILED") << " (" +
                   fmt(seconds_since(start), 4) + " s)"
            << std::endl;
  return failures == 0 ? 0 : 1;
}
