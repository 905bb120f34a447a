#pragma once

// Brute-force reference implementations shared by the unit and acceptance
// tests. They favour obviousness over speed and only touch the public model.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "speedscale/model.hpp"

namespace speedscale::testing {

inline Instance random_instance(std::mt19937_64& gen, int n, double time_max, double span_max, double work_max,
                                bool integral = false) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto draw = [&](double lo, double hi) {
    const double x = lo + (hi - lo) * u01(gen);
    return integral ? std::max(lo, std::round(x)) : x;
  };
  std::vector<Job> jobs;
  for (int i = 0; i < n; ++i) {
    Job j;
    j.release = draw(0.0, time_max);
    j.deadline = j.release + draw(integral ? 1.0 : 0.05, span_max);
    j.work = draw(integral ? 1.0 : 0.05, work_max);
    jobs.push_back(j);
  }
  return Instance(std::move(jobs));
}

/// Work of jobs with release >= t1 and deadline <= t2, by definition.
inline double brute_work(const std::vector<Job>& jobs, double t1, double t2) {
  double w = 0.0;
  for (const Job& j : jobs) {
    if (j.release >= t1 && j.deadline <= t2) w += j.work;
  }
  return w;
}

inline std::vector<Job> to_vector(const Instance& inst) { return {inst.jobs().begin(), inst.jobs().end()}; }

/// Max intensity over every (release, deadline) pair.
inline double brute_max_intensity(const std::vector<Job>& jobs) {
  double best = 0.0;
  for (const Job& a : jobs) {
    for (const Job& b : jobs) {
      if (b.deadline > a.release) best = std::max(best, brute_work(jobs, a.release, b.deadline) / (b.deadline - a.release));
    }
  }
  return best;
}

/// Jobs released by `now`.
inline std::vector<Job> arrived(const Instance& inst, double now) {
  std::vector<Job> out;
  for (const Job& j : inst.jobs()) {
    if (j.release <= now) out.push_back(j);
  }
  return out;
}

/// p(now) over t1 in the releases <= now (a release equal to now stands for
/// t1 -> now from the left) and t2 in {now} and the deadlines >= now.
inline double brute_p(const Instance& inst, double now) {
  const auto seen = arrived(inst, now);
  std::vector<double> t2s{now};
  for (const Job& j : seen) {
    if (j.deadline >= now) t2s.push_back(j.deadline);
  }
  double best = 0.0;
  for (const Job& a : seen) {
    for (double t2 : t2s) {
      if (t2 > a.release) best = std::max(best, brute_work(seen, a.release, t2) / (t2 - a.release));
    }
  }
  return best;
}

inline double v_at(const std::vector<Job>& seen, double now, double t_prime) {
  constexpr double e = std::numbers::e;
  return brute_work(seen, e * now - (e - 1.0) * t_prime, t_prime) / (e * (t_prime - now));
}

/// Same with the window start given exactly (avoids rounding s away from a release).
inline double v_window(const std::vector<Job>& seen, double now, double start, double t_prime) {
  return brute_work(seen, start, t_prime) / (std::numbers::e * (t_prime - now));
}

/// v(now) over t' in the deadlines > now and the points where the window
/// start e*now - (e-1)*t' meets a release.
inline double brute_v(const Instance& inst, double now) {
  constexpr double e = std::numbers::e;
  const auto seen = arrived(inst, now);
  double best = 0.0;
  for (const Job& j : seen) {
    if (j.deadline > now) best = std::max(best, v_at(seen, now, j.deadline));
    if (j.release < now) best = std::max(best, v_window(seen, now, j.release, (e * now - j.release) / (e - 1.0)));
  }
  return best;
}

/// Energy of the best schedule found by a search over one constant speed per
/// atomic interval (pieces between consecutive release/deadline points).
/// Feasibility is the single-machine EDF condition: for every release a and
/// deadline b, work inside [a, b] <= capacity over [a, b]. The search starts
/// from the uniform max-intensity speed and applies decrease and
/// capacity-exchange moves at step sizes halving down to `granularity`.
inline double oracle_min_energy(const std::vector<Job>& jobs, double alpha, double granularity = 1e-3) {
  std::vector<double> pts;
  for (const Job& j : jobs) {
    pts.push_back(j.release);
    pts.push_back(j.deadline);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t m = pts.size() - 1;
  std::vector<double> len(m);
  for (std::size_t k = 0; k < m; ++k) len[k] = pts[k + 1] - pts[k];

  struct Constraint {
    std::size_t lo, hi;
    double demand;
  };
  std::vector<Constraint> cons;
  for (const Job& a : jobs) {
    for (const Job& b : jobs) {
      if (b.deadline <= a.release) continue;
      const double w = brute_work(jobs, a.release, b.deadline);
      if (w <= 0.0) continue;
      const auto lo = static_cast<std::size_t>(std::lower_bound(pts.begin(), pts.end(), a.release) - pts.begin());
      const auto hi = static_cast<std::size_t>(std::lower_bound(pts.begin(), pts.end(), b.deadline) - pts.begin());
      cons.push_back({lo, hi, w});
    }
  }
  auto feasible = [&](const std::vector<double>& s) {
    for (const Constraint& c : cons) {
      double cap = 0.0;
      for (std::size_t k = c.lo; k < c.hi; ++k) cap += s[k] * len[k];
      if (cap < c.demand * (1.0 - 1e-12)) return false;
    }
    return true;
  };
  auto cost = [&](const std::vector<double>& s) {
    double e = 0.0;
    for (std::size_t k = 0; k < m; ++k) e += std::pow(s[k], alpha) * len[k];
    return e;
  };

  const double top = brute_max_intensity(jobs);
  std::vector<double> s(m, top);
  double best = cost(s);
  auto try_move = [&](std::vector<double>& cand) {
    const double c = cost(cand);
    if (c < best * (1.0 - 1e-15) && feasible(cand)) {
      s = cand;
      best = c;
      return true;
    }
    return false;
  };
  for (double step = top / 2.0; step >= granularity; step /= 2.0) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t i = 0; i < m; ++i) {
        if (s[i] >= step) {
          auto cand = s;
          cand[i] -= step;
          improved |= try_move(cand);
        }
        for (std::size_t j = 0; j < m; ++j) {
          if (i == j || s[i] < step) continue;
          auto cand = s;
          cand[i] -= step;
          cand[j] += step * len[i] / len[j];
          improved |= try_move(cand);
        }
      }
    }
  }
  return best;
}

}  // namespace speedscale::testing
