#include "speedscale/online.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace speedscale {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kE = std::numbers::e;

struct OpenJob {
  double release;
  double deadline;
  double work;
};

/// Arrived jobs whose deadline is still ahead, in release order.
std::vector<OpenJob> open_jobs(const PolicyState& state) {
  std::vector<OpenJob> out;
  out.reserve(state.window().size());
  for (JobId id : state.window()) {
    const Job& j = state.instance().job(id);
    if (j.deadline > state.now()) out.push_back({j.release, j.deadline, j.work});
  }
  return out;
}

double log2_at_least_one(std::size_t n) { return std::max(1.0, std::log2(static_cast<double>(n) + 1.0)); }

}  // namespace

std::string_view to_string(Policy policy) {
  switch (policy) {
    case Policy::AVR: return "AVR";
    case Policy::OA: return "OA";
    case Policy::QOA: return "qOA";
    case Policy::BKP_EV: return "BKP-ev";
    case Policy::BKP_EP: return "BKP-ep";
  }
  return "unknown";
}

Policy parse_policy(std::string_view name) {
  std::string n;
  for (char c : name) n.push_back(c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (n == "avr") return Policy::AVR;
  if (n == "oa") return Policy::OA;
  if (n == "qoa") return Policy::QOA;
  if (n == "bkp-ev" || n == "bkpev") return Policy::BKP_EV;
  if (n == "bkp-ep" || n == "bkpep") return Policy::BKP_EP;
  throw std::invalid_argument("unknown policy: " + std::string(name));
}

void SimConfig::validate() const {
  if (!(tick > 0.0) || !std::isfinite(tick)) throw std::invalid_argument("tick must be positive");
  if (!(q >= 1.0) || !std::isfinite(q)) throw std::invalid_argument("q must be >= 1");
}

PolicyState::PolicyState(const Instance& instance)
    : instance_(&instance), now_(-kInf), remaining_(instance.size(), 0.0) {
  double before = 0.0;
  for (const Job& j : instance.jobs()) {
    if (points_.empty() || j.release > points_.back()) {
      points_.push_back(j.release);
      before_.push_back(before);
    }
    before += j.work;
  }
  before_.push_back(before);
  index_ = LeftTangentIndex(points_, std::span<const double>(before_).first(points_.size()));
}

void PolicyState::advance_to(double now) {
  if (now < now_) throw std::invalid_argument("PolicyState::advance_to: time went backwards");
  now_ = now;
  const auto jobs = instance_->jobs();
  while (arrived_ < jobs.size() && jobs[arrived_].release <= now) {
    const Job& j = jobs[arrived_];
    remaining_[arrived_] = j.work;
    unfinished_.emplace(j.deadline, j.id);
    window_.push_back(j.id);
    arrived_work_ += j.work;
    ++arrived_;
  }
  std::erase_if(window_, [&](JobId id) { return instance_->job(id).deadline < now; });
}

void PolicyState::set_remaining(JobId id, double work) {
  const Job& j = instance_->job(id);
  if (static_cast<std::size_t>(id) >= arrived_) throw std::invalid_argument("set_remaining: job not released");
  auto& slot = remaining_[static_cast<std::size_t>(id)];
  if (work <= kWorkEpsilon * j.work) {
    slot = 0.0;
    unfinished_.erase({j.deadline, id});
  } else {
    slot = std::min(work, j.work);
    unfinished_.emplace(j.deadline, id);
  }
}

void PolicyState::abandon(JobId id) { unfinished_.erase({instance_->job(id).deadline, id}); }

double PolicyState::work_released_before(double t) const {
  const auto u = std::lower_bound(points_.begin(), points_.end(), t) - points_.begin();
  return before_[static_cast<std::size_t>(u)];
}

double speed_avr(const PolicyState& state) {
  if (!state.has_unfinished()) return 0.0;
  double speed = 0.0;
  for (JobId id : state.window()) {
    const Job& j = state.instance().job(id);
    if (j.release <= state.now() && state.now() <= j.deadline) speed += j.work / (j.deadline - j.release);
  }
  return speed;
}

double speed_qoa(const PolicyState& state, double q) {
  const double now = state.now();
  double best = 0.0;
  double cumulative = 0.0;
  const auto& pending = state.unfinished();
  for (auto it = pending.begin(); it != pending.end(); ++it) {
    cumulative += state.remaining(it->second);
    const auto next = std::next(it);
    if (next != pending.end() && next->first == it->first) continue;
    if (it->first > now) best = std::max(best, cumulative / (it->first - now));
  }
  return q * best;
}

double bkp_p(const PolicyState& state) {
  const double now = state.now();
  const double total = state.arrived_work();
  const auto points = state.release_points();
  const auto before = state.work_before_points();
  const auto& index = state.tangent_index();
  const std::size_t points_now =
      static_cast<std::size_t>(std::upper_bound(points.begin(), points.end(), now) - points.begin());
  if (points_now == 0) return 0.0;
  const std::size_t points_before_now =
      static_cast<std::size_t>(std::lower_bound(points.begin(), points.begin() + points_now, now) - points.begin());

  const std::vector<OpenJob> open = open_jobs(state);
  const std::size_t k = open.size();

  // t2 candidates: now itself and every open deadline.
  std::vector<double> t2{now};
  for (const OpenJob& o : open) t2.push_back(o.deadline);
  std::sort(t2.begin() + 1, t2.end());
  t2.erase(std::unique(t2.begin(), t2.end()), t2.end());
  const std::size_t m = t2.size();

  // c[j] = total - (work of open jobs with r >= t1 and d > t2[j]); region 0 counts every open job.
  std::vector<double> c(m, total);
  for (const OpenJob& o : open) {
    for (std::size_t j = 0; j < m && t2[j] < o.deadline; ++j) c[j] -= o.work;
  }

  const double log_u = log2_at_least_one(points_now);
  const double range_cost = static_cast<double>(m) * log_u * log_u;
  const double sweep_unit = log2_at_least_one(m);

  double best = 0.0;
  std::vector<double> hx, hy;
  for (std::size_t region = 0; region <= k; ++region) {
    if (region > 0) {
      const OpenJob& gone = open[region - 1];
      for (std::size_t j = 0; j < m && t2[j] < gone.deadline; ++j) c[j] += gone.work;
    }
    const double lower_bound_x = region > 0 ? open[region - 1].release : -kInf;
    const double upper_x = region < k ? open[region].release : now;
    const std::size_t lo =
        region == 0 ? 0
                    : static_cast<std::size_t>(std::upper_bound(points.begin(), points.begin() + points_now, lower_bound_x) -
                                               points.begin());
    const std::size_t hi = static_cast<std::size_t>(
        std::upper_bound(points.begin(), points.begin() + points_now, upper_x) - points.begin());
    if (lo >= hi) continue;

    // Cheap upper bound from the region's lowest prefix work and rightmost point.
    bool promising = false;
    for (std::size_t j = 0; j < m && !promising; ++j) {
      const std::size_t top = j == 0 ? std::min(hi, points_before_now) : hi;
      if (top <= lo) continue;
      const double num = c[j] - before[lo];
      if (num <= 0.0) continue;
      promising = !(t2[j] > points[top - 1]) || num / (t2[j] - points[top - 1]) > best;
    }
    if (!promising) continue;

    const double query_cost = lo == 0 ? static_cast<double>(m) * log_u : range_cost;
    if (static_cast<double>(hi - lo) * sweep_unit <= query_cost) {
      upper_hull(t2, c, hx, hy);
      for (std::size_t u = lo; u < hi; ++u) {
        if (points[u] < now) {
          best = std::max(best, max_slope_from(points[u], before[u], hx, hy));
        } else {
          for (std::size_t j = 1; j < m; ++j) best = std::max(best, (c[j] - before[u]) / (t2[j] - points[u]));
        }
      }
    } else {
      for (std::size_t j = 0; j < m; ++j) {
        const std::size_t top = j == 0 ? std::min(hi, points_before_now) : hi;
        best = std::max(best, lo == 0 ? index.max_slope_to_prefix(top, t2[j], c[j])
                                      : index.max_slope_to(lo, top, t2[j], c[j]));
      }
    }
  }
  return best;
}

double bkp_v(const PolicyState& state) {
  const double now = state.now();
  const double total = state.arrived_work();
  const auto points = state.release_points();
  const auto& index = state.tangent_index();
  const std::vector<OpenJob> open = open_jobs(state);

  double best = 0.0;  // best value of w / (t' - now), i.e. e * v

  // t' at an open deadline.
  for (const OpenJob& cand : open) {
    const double start = kE * now - (kE - 1.0) * cand.deadline;
    double w = total - state.work_released_before(start);
    for (const OpenJob& o : open) {
      if (o.release >= start && o.deadline > cand.deadline) w -= o.work;
    }
    best = std::max(best, w / (cand.deadline - now));
  }

  // t' where the window start e*now - (e-1)*t' crosses a release point x < now.
  // An open job is cut off by d > t' exactly for x in (e*now - (e-1)*d, r].
  std::vector<std::pair<double, double>> events;
  for (const OpenJob& o : open) {
    const double from = kE * now - (kE - 1.0) * o.deadline;
    if (from < o.release) {
      events.emplace_back(from, o.work);
      events.emplace_back(o.release, -o.work);
    }
  }
  std::sort(events.begin(), events.end());
  const std::size_t points_before_now =
      static_cast<std::size_t>(std::lower_bound(points.begin(), points.end(), now) - points.begin());

  double cut = 0.0;
  double cell_lo = -kInf;
  std::size_t e = 0;
  while (true) {
    const double cell_hi = e < events.size() ? events[e].first : kInf;
    const std::size_t lo =
        cell_lo == -kInf ? 0
                         : static_cast<std::size_t>(std::upper_bound(points.begin(), points.end(), cell_lo) - points.begin());
    const std::size_t hi = std::min(
        points_before_now,
        static_cast<std::size_t>(std::upper_bound(points.begin(), points.end(), cell_hi) - points.begin()));
    if (lo < hi) {
      const double slope =
          lo == 0 ? index.max_slope_to_prefix(hi, now, total - cut) : index.max_slope_to(lo, hi, now, total - cut);
      best = std::max(best, (kE - 1.0) * slope);
    }
    if (e >= events.size()) break;
    const double pos = events[e].first;
    while (e < events.size() && events[e].first == pos) cut += events[e++].second;
    cell_lo = pos;
  }
  return best / kE;
}

double speed_bkp_p(const PolicyState& state) { return state.has_unfinished() ? kE * bkp_p(state) : 0.0; }

double speed_bkp_v(const PolicyState& state) { return state.has_unfinished() ? kE * bkp_v(state) : 0.0; }

double policy_speed(const PolicyState& state, const SimConfig& config) {
  switch (config.policy) {
    case Policy::AVR: return speed_avr(state);
    case Policy::OA: return speed_qoa(state, 1.0);
    case Policy::QOA: return speed_qoa(state, config.q);
    case Policy::BKP_EV: return speed_bkp_v(state);
    case Policy::BKP_EP: return speed_bkp_p(state);
  }
  throw std::logic_error("unhandled policy");
}

namespace {

double next_grid_point(double t, double tick) {
  double g = (std::floor(t / tick) + 1.0) * tick;
  while (g <= t) g += tick;
  return g;
}

}  // namespace

SimResult simulate(const Instance& instance, const SimConfig& config, const SimObserver& observer) {
  config.validate();
  SimResult result;
  if (instance.empty()) return result;

  PolicyState state(instance);
  std::vector<Segment> segments;
  const std::size_t n = instance.size();
  double t = instance[0].release;

  auto emit = [&](double start, double end, double speed, JobId id) {
    if (!segments.empty()) {
      Segment& last = segments.back();
      if (last.end == start && last.speed == speed && last.job == id) {
        last.end = end;
        return;
      }
    }
    segments.push_back({start, end, speed, id});
  };

  while (true) {
    state.advance_to(t);
    while (state.has_unfinished() && state.unfinished().begin()->first <= t) {
      const JobId id = state.unfinished().begin()->second;
      result.misses.push_back({id, state.remaining(id)});
      state.abandon(id);
    }
    const double next_release = state.arrived() < n ? instance[state.arrived()].release : kInf;
    if (!state.has_unfinished()) {
      if (next_release == kInf) break;
      t = next_release;
      continue;
    }

    const double speed = policy_speed(state, config);
    ++result.evaluations;
    if (observer) observer(state, speed);

    const auto [deadline, id] = *state.unfinished().begin();
    const double boundary = std::min({next_release, next_grid_point(t, config.tick), deadline});
    if (speed > 0.0) {
      const double rem = state.remaining(id);
      const double finish = t + rem / speed;
      if (finish <= boundary) {
        if (finish > t) emit(t, finish, speed, id);
        state.set_remaining(id, 0.0);
        t = std::max(finish, t);
        continue;
      }
      emit(t, boundary, speed, id);
      state.set_remaining(id, rem - speed * (boundary - t));
    }
    t = boundary;
  }

  result.schedule = SpeedSchedule(std::move(segments));
  return result;
}

}  // namespace speedscale
