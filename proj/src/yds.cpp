#include "speedscale/yds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace speedscale {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Best {
  double value = -1.0;
  int t2_job = -1;  // any job whose deadline equals the best t2
};

/// Deadline- and release-ordered views over the live jobs of the current
/// time line, supporting "best interval starting at t1" scans.
class IntensityScanner {
 public:
  IntensityScanner(const std::vector<double>& release, const std::vector<double>& deadline,
                   const std::vector<double>& work)
      : release_(release), deadline_(deadline), work_(work) {}

  /// `release_order` must be sorted by release, `deadline_order` by deadline.
  void rebuild(const std::vector<int>& release_order, const std::vector<int>& deadline_order) {
    const std::size_t n = release_order.size();
    rel_sorted_.resize(n);
    suffix_work_.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) rel_sorted_[i] = release_[release_order[i]];
    for (std::size_t i = n; i-- > 0;) suffix_work_[i] = suffix_work_[i + 1] + work_[release_order[i]];
    by_deadline_ = deadline_order;
    dl_sorted_.resize(n);
    for (std::size_t i = 0; i < n; ++i) dl_sorted_[i] = deadline_[by_deadline_[i]];
  }

  Best scan(double t1) const {
    Best best;
    const auto rpos = std::lower_bound(rel_sorted_.begin(), rel_sorted_.end(), t1) - rel_sorted_.begin();
    const double reachable = suffix_work_[static_cast<std::size_t>(rpos)];
    auto i = static_cast<std::size_t>(std::upper_bound(dl_sorted_.begin(), dl_sorted_.end(), t1) -
                                      dl_sorted_.begin());
    double acc = 0.0;
    const std::size_t n = by_deadline_.size();
    for (; i < n; ++i) {
      const int j = by_deadline_[i];
      if (release_[j] >= t1) acc += work_[j];
      if (i + 1 < n && dl_sorted_[i + 1] == dl_sorted_[i]) continue;
      const double len = dl_sorted_[i] - t1;
      const double ratio = acc / len;
      if (ratio > best.value) best = {ratio, j};
      // Every later t2 has ratio <= reachable / len.
      if (reachable / len <= best.value) break;
    }
    return best;
  }

 private:
  const std::vector<double>& release_;
  const std::vector<double>& deadline_;
  const std::vector<double>& work_;
  std::vector<double> rel_sorted_;
  std::vector<double> suffix_work_;
  std::vector<int> by_deadline_;
  std::vector<double> dl_sorted_;
};

struct HeapEntry {
  double key;
  int job;
  std::uint32_t version;
};

struct HeapOrder {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.key != b.key) return a.key < b.key;
    return a.job > b.job;  // earlier release (lower index) first on ties
  }
};

struct Piece {
  double start, end;
  int job;
};

/// EDF at constant speed over jobs that all fit inside the interval.
/// Returns compressed-time pieces.
std::vector<Piece> edf_at_speed(std::vector<int> jobs, const std::vector<double>& release,
                                const std::vector<double>& deadline, const std::vector<double>& work,
                                double speed, double t_begin) {
  std::sort(jobs.begin(), jobs.end(), [&](int a, int b) {
    if (release[a] != release[b]) return release[a] < release[b];
    return a < b;
  });
  std::vector<double> remaining(jobs.size());
  for (std::size_t k = 0; k < jobs.size(); ++k) remaining[k] = work[jobs[k]];
  // Ready queue holds positions into `jobs`; earliest deadline, then lowest id.
  auto later = [&](std::size_t a, std::size_t b) {
    if (deadline[jobs[a]] != deadline[jobs[b]]) return deadline[jobs[a]] > deadline[jobs[b]];
    return jobs[a] > jobs[b];
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(later)> ready(later);
  std::vector<Piece> out;

  double t = t_begin;
  std::size_t next = 0;
  while (next < jobs.size() || !ready.empty()) {
    while (next < jobs.size() && release[jobs[next]] <= t) ready.push(next++);
    if (ready.empty()) {
      t = release[jobs[next]];
      continue;
    }
    const std::size_t k = ready.top();
    const double finish = t + remaining[k] / speed;
    const double next_release = next < jobs.size() ? release[jobs[next]] : kInf;
    if (finish <= next_release) {
      out.push_back({t, finish, jobs[k]});
      remaining[k] = 0.0;
      ready.pop();
      t = finish;
    } else {
      out.push_back({t, next_release, jobs[k]});
      remaining[k] -= (next_release - t) * speed;
      t = next_release;
    }
  }
  return out;
}

}  // namespace

CriticalInterval find_critical_interval(std::span<const Job> jobs) {
  if (jobs.empty()) throw std::invalid_argument("find_critical_interval: empty instance");
  const std::size_t n = jobs.size();
  std::vector<double> r(n), d(n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = jobs[i].release;
    d[i] = jobs[i].deadline;
    w[i] = jobs[i].work;
  }
  std::vector<int> by_release(n), by_deadline(n);
  std::iota(by_release.begin(), by_release.end(), 0);
  std::iota(by_deadline.begin(), by_deadline.end(), 0);
  std::stable_sort(by_release.begin(), by_release.end(), [&](int a, int b) { return r[a] < r[b]; });
  std::stable_sort(by_deadline.begin(), by_deadline.end(), [&](int a, int b) { return d[a] < d[b]; });

  IntensityScanner scanner(r, d, w);
  scanner.rebuild(by_release, by_deadline);

  Best best;
  double best_t1 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const int j = by_release[k];
    if (k > 0 && r[j] == r[by_release[k - 1]]) continue;
    const Best b = scanner.scan(r[j]);
    if (b.value > best.value) {
      best = b;
      best_t1 = r[j];
    }
  }
  CriticalInterval ci;
  ci.t1 = best_t1;
  ci.t2 = d[best.t2_job];
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (r[i] >= ci.t1 && d[i] <= ci.t2) {
      ci.jobs.push_back(jobs[i].id);
      total += w[i];
    }
  }
  ci.intensity = total / (ci.t2 - ci.t1);
  return ci;
}

std::vector<Job> compress_time(std::span<const Job> jobs, double t1, double t2) {
  const double shift = t2 - t1;
  std::vector<Job> out(jobs.begin(), jobs.end());
  for (Job& j : out) {
    if (j.deadline > t1) j.deadline = std::max(t1, j.deadline - shift);
    if (j.release > t1) j.release = std::max(t1, j.release - shift);
  }
  return out;
}

CompressionMap::CompressionMap() { free_.push_back({-kInf, kInf, 0.0}); }

void CompressionMap::cut(double c1, double c2) {
  if (!(c2 > c1)) return;
  const double delta = c2 - c1;
  std::vector<Free> next;
  next.reserve(free_.size() + 1);
  for (const Free& f : free_) {
    const double cs = f.start - f.shift;
    const double ce = f.end - f.shift;
    if (ce <= c1) {
      next.push_back(f);
    } else if (cs >= c2) {
      next.push_back({f.start, f.end, f.shift + delta});
    } else {
      if (cs < c1) next.push_back({f.start, c1 + f.shift, f.shift});
      if (ce > c2) next.push_back({c2 + f.shift, f.end, f.shift + delta});
    }
  }
  free_ = std::move(next);
  ++cuts_;
}

std::vector<std::pair<double, double>> CompressionMap::expand(double c1, double c2) const {
  std::vector<std::pair<double, double>> out;
  // First free piece whose compressed end exceeds c1.
  auto it = std::partition_point(free_.begin(), free_.end(),
                                 [&](const Free& f) { return f.end - f.shift <= c1; });
  for (; it != free_.end(); ++it) {
    const double cs = it->start - it->shift;
    const double ce = it->end - it->shift;
    if (cs >= c2) break;
    const double lo = std::max(c1, cs) + it->shift;
    const double hi = std::min(c2, ce) + it->shift;
    if (hi > lo) out.emplace_back(lo, hi);
  }
  return out;
}

double CompressionMap::to_compressed(double original) const {
  for (const Free& f : free_) {
    if (original < f.start) return f.start - f.shift;  // inside a removed piece
    if (original < f.end) return original - f.shift;
  }
  return original - free_.back().shift;
}

YdsResult yds_solve(const Instance& instance) {
  YdsResult result;
  const std::size_t n = instance.size();
  if (n == 0) return result;

  std::vector<double> rel(n), dl(n), work(n);
  for (std::size_t i = 0; i < n; ++i) {
    rel[i] = instance[i].release;
    dl[i] = instance[i].deadline;
    work[i] = instance[i].work;
  }
  std::vector<char> alive(n, 1);
  std::vector<int> release_order(n);
  std::iota(release_order.begin(), release_order.end(), 0);  // instance is release-sorted
  std::vector<int> deadline_order = release_order;
  std::stable_sort(deadline_order.begin(), deadline_order.end(),
                   [&](int a, int b) { return dl[a] < dl[b]; });

  IntensityScanner scanner(rel, dl, work);
  scanner.rebuild(release_order, deadline_order);

  std::vector<Best> best(n);
  std::vector<char> dirty(n, 0);
  std::vector<std::uint32_t> version(n, 0);
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapOrder> heap;
  for (std::size_t i = 0; i < n; ++i) {
    best[i] = (i > 0 && rel[i] == rel[i - 1]) ? best[i - 1] : scanner.scan(rel[i]);
    heap.push({best[i].value, static_cast<int>(i), 0});
  }

  CompressionMap map;
  std::vector<Segment> segments;
  std::size_t remaining = n;

  while (remaining > 0) {
    // Stored keys are upper bounds on each candidate's current best value
    // (intensities only drop under compression), so the first clean entry
    // on top of the heap is the global maximum.
    int top = -1;
    while (!heap.empty()) {
      const HeapEntry e = heap.top();
      if (!alive[e.job] || e.version != version[e.job]) {
        heap.pop();
        continue;
      }
      if (dirty[e.job]) {
        heap.pop();
        best[e.job] = scanner.scan(rel[e.job]);
        dirty[e.job] = 0;
        heap.push({best[e.job].value, e.job, ++version[e.job]});
        continue;
      }
      top = e.job;
      break;
    }
    if (top < 0) throw std::logic_error("yds: candidate heap exhausted");

    const double t1 = rel[top];
    const double t2 = dl[best[top].t2_job];
    CriticalInterval ci;
    ci.t1 = t1;
    ci.t2 = t2;
    std::vector<int> members;
    double total = 0.0;
    for (int j : release_order) {
      if (rel[j] >= t1 && dl[j] <= t2) {
        members.push_back(j);
        total += work[j];
      }
    }
    ci.intensity = total / (t2 - t1);
    for (int j : members) ci.jobs.push_back(static_cast<JobId>(j));

    for (const Piece& p : edf_at_speed(members, rel, dl, work, ci.intensity, t1)) {
      const Job& job = instance[static_cast<std::size_t>(p.job)];
      for (auto [lo, hi] : map.expand(p.start, p.end)) {
        lo = std::max(lo, job.release);
        hi = std::min(hi, job.deadline);
        if (hi > lo) segments.push_back({lo, hi, ci.intensity, static_cast<JobId>(p.job)});
      }
    }
    map.cut(t1, t2);

    for (int j : members) alive[j] = 0;
    remaining -= members.size();

    // Candidates whose best interval reaches the cut may have changed; those
    // whose release collapses onto t1 get the current maximum as their bound.
    for (int j : release_order) {
      if (!alive[j]) continue;
      if (rel[j] <= t2 && dl[best[j].t2_job] >= t1) {
        dirty[j] = 1;
        if (rel[j] > t1) heap.push({ci.intensity, j, ++version[j]});
      }
    }
    const double shift = t2 - t1;
    for (int j : release_order) {
      if (!alive[j]) continue;
      if (dl[j] > t1) dl[j] = std::max(t1, dl[j] - shift);
      if (rel[j] > t1) rel[j] = std::max(t1, rel[j] - shift);
    }
    std::erase_if(release_order, [&](int j) { return !alive[j]; });
    std::erase_if(deadline_order, [&](int j) { return !alive[j]; });
    scanner.rebuild(release_order, deadline_order);

    result.intervals.push_back(std::move(ci));
  }

  std::sort(segments.begin(), segments.end(),
            [](const Segment& a, const Segment& b) { return a.start < b.start; });
  std::vector<Segment> clean;
  clean.reserve(segments.size());
  for (Segment s : segments) {
    if (!clean.empty() && s.start < clean.back().end) s.start = clean.back().end;
    if (s.end > s.start) clean.push_back(s);
  }
  result.schedule = SpeedSchedule(std::move(clean));
  return result;
}

}  // namespace speedscale
