#include "qaoams/multistart.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <memory>
#include <unordered_map>

#include "qaoams/simulator.hpp"

namespace qaoams {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sq += (a[i] - b[i]) * (a[i] - b[i]);
  return sq;
}

double distance(std::span<const double> a, std::span<const double> b) { return std::sqrt(squared_distance(a, b)); }

// Incremental form of the start rule over a growing history. Radii shrink
// from `reach` (a bound on every radius still to be used) down to `floor`
// (the smallest radius the run can reach). Pairs farther apart than `reach`
// are never compared, and a point with a better neighbour or a found optimum
// within `floor` can never start a run, so it leaves the open set for good.
class StartIndex {
 public:
  StartIndex(const EvalHistory& history, double floor)
      : history_(history), floor_sq_(floor * floor * (1.0 - 1e-9)) {}

  void set_reach(double reach) { reach_ = reach; }

  // Registers the point just pushed onto the history.
  void add(std::size_t i) {
    const Point& x = history_.point(i);
    const double v = history_.value(i);
    const double lo = x[0] - reach_, hi = x[0] + reach_;
    for (auto it = open_.lower_bound(lo); it != open_.end() && it->first <= hi;) {
      Entry& e = entries_.at(it->second);
      if (history_.value(it->second) > v) {
        e.better_sq = std::min(e.better_sq, squared_distance(history_.point(it->second), x));
        if (e.better_sq <= floor_sq_) {
          entries_.erase(it->second);
          it = open_.erase(it);
          continue;
        }
      }
      ++it;
    }
    double better_sq = std::numeric_limits<double>::infinity();
    for (auto it = all_.lower_bound(lo); it != all_.end() && it->first <= hi; ++it) {
      if (history_.value(it->second) >= v) continue;
      better_sq = std::min(better_sq, squared_distance(history_.point(it->second), x));
      if (better_sq <= floor_sq_) break;
    }
    all_.emplace(x[0], i);
    if (better_sq <= floor_sq_) return;
    double optimum_sq = std::numeric_limits<double>::infinity();
    for (const auto& o : optima_) optimum_sq = std::min(optimum_sq, squared_distance(o, x));
    if (optimum_sq <= floor_sq_) return;
    open_.emplace(x[0], i);
    entries_.emplace(i, Entry{better_sq, optimum_sq});
  }

  void add_optimum(const Point& p) {
    optima_.push_back(p);
    for (auto it = open_.begin(); it != open_.end();) {
      Entry& e = entries_.at(it->second);
      e.optimum_sq = std::min(e.optimum_sq, squared_distance(history_.point(it->second), p));
      if (e.optimum_sq <= floor_sq_) {
        entries_.erase(it->second);
        it = open_.erase(it);
      } else {
        ++it;
      }
    }
  }

  void remove(std::size_t i) {
    auto [first, last] = open_.equal_range(history_.point(i)[0]);
    for (auto it = first; it != last; ++it) {
      if (it->second == i) {
        open_.erase(it);
        break;
      }
    }
    entries_.erase(i);
  }

  // Open points with no better point and no found optimum within `radius`,
  // best first, ties by index.
  std::vector<std::size_t> candidates(double radius) const {
    std::vector<std::size_t> out;
    for (const auto& [i, e] : entries_) {
      if (std::sqrt(e.better_sq) > radius && std::sqrt(e.optimum_sq) > radius) out.push_back(i);
    }
    std::sort(out.begin(), out.end(), [&](auto a, auto b) {
      const double va = history_.value(a), vb = history_.value(b);
      return va != vb ? va < vb : a < b;
    });
    return out;
  }

 private:
  struct Entry {
    double better_sq;
    double optimum_sq;
  };
  const EvalHistory& history_;
  double floor_sq_;
  double reach_ = std::numeric_limits<double>::infinity();
  std::multimap<double, std::size_t> all_;   // keyed by first coordinate
  std::multimap<double, std::size_t> open_;  // keyed by first coordinate
  std::unordered_map<std::size_t, Entry> entries_;
  std::vector<Point> optima_;
};

}  // namespace

void MultistartConfig::validate() const {
  local_stop.validate();
  if (sample_batch < 1) throw InvalidArgument("sample_batch must be >= 1");
  if (total_budget < sample_batch) throw InvalidArgument("total_budget must be >= sample_batch");
  if (!(sigma > 0.0)) throw InvalidArgument("sigma must be > 0");
}

double critical_radius(std::size_t batches, std::size_t batch_size, std::size_t dim, double volume,
                       double sigma) {
  const double kn = static_cast<double>(batches) * static_cast<double>(batch_size);
  if (kn < 2.0) throw InvalidArgument("critical radius needs at least two sampled points");
  if (dim < 1 || !(volume > 0.0) || !(sigma > 0.0)) {
    throw InvalidArgument("critical radius needs dim >= 1, volume > 0, sigma > 0");
  }
  const double d = static_cast<double>(dim);
  const double inner = std::tgamma(1.0 + d / 2.0) * volume * sigma * std::log(kn) / kn;
  return std::pow(inner, 1.0 / d) / std::sqrt(kPi);
}

bool should_start_run(const EvalHistory& history, std::size_t candidate, double radius,
                      const std::vector<Point>& minima) {
  const Point& x = history.point(candidate);
  const double fx = history.value(candidate);
  for (std::size_t i = 0; i < history.size(); ++i) {
    if (i == candidate) continue;
    if (history.value(i) < fx && distance(history.point(i), x) <= radius) return false;
  }
  for (const auto& m : minima) {
    if (distance(m, x) <= radius) return false;
  }
  return true;
}

MultistartResult multistart_minimize(const ObjectiveFn& f, const Bounds& bounds, LocalMethod local,
                                     const MultistartConfig& config) {
  config.validate();
  Rng rng(config.seed);
  MultistartResult out;
  const std::size_t floor_batches = config.total_budget / config.sample_batch + 1;
  const double floor = floor_batches * config.sample_batch >= 5
                           ? critical_radius(floor_batches, config.sample_batch, bounds.dim(), bounds.volume(),
                                             config.sigma)
                           : 0.0;
  StartIndex index(out.history, floor);

  auto evaluate = [&](const Point& x, int run) {
    double value;
    try {
      value = f(x);
    } catch (const std::exception& e) {
      throw ObjectiveFailure(e.what(), out.history);
    }
    out.history.push(x, value);
    out.run_of.push_back(run);
    index.add(out.history.size() - 1);
    return value;
  };
  auto budget_left = [&] { return out.history.size() < config.total_budget; };

  for (const auto& p : config.initial_points) {
    if (!budget_left()) break;
    evaluate(bounds.project(p), -1);
    ++out.sample_evals;
  }

  std::size_t batches = 0;
  while (budget_left()) {
    if ((batches + 1) * config.sample_batch >= 3) {
      index.set_reach(critical_radius(batches + 1, config.sample_batch, bounds.dim(), bounds.volume(),
                                      config.sigma) *
                      (1.0 + 1e-9));
    }
    for (std::size_t i = 0; i < config.sample_batch && budget_left(); ++i) {
      evaluate(bounds.sample(rng), -1);
      ++out.sample_evals;
    }
    ++batches;
    if (batches * config.sample_batch < 2) continue;
    const double radius =
        critical_radius(batches, config.sample_batch, bounds.dim(), bounds.volume(), config.sigma);

    // Candidates in ascending value so the best eligible point launches first
    // and claims its neighbourhood.
    const std::vector<std::size_t> order = index.candidates(radius);

    // Starts launched in this batch; found optima are covered by the cache.
    std::vector<Point> minima;

    std::vector<std::unique_ptr<LocalRun>> active;
    std::vector<std::size_t> active_ids;
    for (std::size_t idx : order) {
      if (config.max_active_runs > 0 && active.size() >= config.max_active_runs) break;
      const bool near_start = std::any_of(minima.begin(), minima.end(), [&](const Point& m) {
        return distance(m, out.history.point(idx)) <= radius;
      });
      if (near_start) continue;
      index.remove(idx);
      minima.push_back(out.history.point(idx));
      auto run = std::make_unique<LocalRun>(local, out.history.point(idx), bounds, config.local_stop,
                                            out.history.value(idx));
      MultistartRun record;
      record.start_index = idx;
      record.provenance = out.run_of[idx] < 0 ? StartProvenance::kSampled : StartProvenance::kHistoryPoint;
      record.segment.start = out.history.point(idx);
      active_ids.push_back(out.runs.size());
      out.runs.push_back(std::move(record));
      active.push_back(std::move(run));
    }

    // Round-robin, one evaluation per run per turn.
    auto close_run = [&](std::size_t slot, Termination t) {
      auto& record = out.runs[active_ids[slot]];
      const LocalRun& run = *active[slot];
      record.segment.status = t;
      record.segment.count = record.eval_indices.size();
      record.segment.best_point = run.best_point();
      record.segment.best_value = run.best_value();
      if (t != Termination::kBudgetExhausted) {
        out.local_optima.push_back({run.best_point(), run.best_value()});
        index.add_optimum(run.best_point());
      }
    };
    std::vector<bool> open(active.size(), true);
    std::size_t remaining = active.size();
    for (std::size_t slot = 0; slot < active.size(); ++slot) {
      if (active[slot]->finished()) {
        close_run(slot, active[slot]->status());
        open[slot] = false;
        --remaining;
      }
    }
    while (remaining > 0 && budget_left()) {
      for (std::size_t slot = 0; slot < active.size() && budget_left(); ++slot) {
        if (!open[slot]) continue;
        LocalRun& run = *active[slot];
        const Point x = run.pending();
        const double value = evaluate(x, static_cast<int>(active_ids[slot]));
        out.runs[active_ids[slot]].eval_indices.push_back(out.history.size() - 1);
        run.tell(value);
        if (run.finished()) {
          close_run(slot, run.status());
          open[slot] = false;
          --remaining;
        }
      }
    }
    for (std::size_t slot = 0; slot < active.size(); ++slot) {
      if (open[slot]) close_run(slot, Termination::kBudgetExhausted);
    }
  }
  return out;
}

std::vector<LocalOptimum> harvest_local_optima(const std::vector<LocalOptimum>& optima,
                                               double dedup_radius) {
  std::vector<LocalOptimum> sorted = optima;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.value < b.value; });
  std::vector<LocalOptimum> kept;
  for (auto& o : sorted) {
    const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const LocalOptimum& k) {
      return distance(k.point, o.point) <= dedup_radius;
    });
    if (!duplicate) kept.push_back(std::move(o));
  }
  return kept;
}

std::vector<LocalOptimum> harvest_local_optima(const MultistartResult& result, double dedup_radius) {
  return harvest_local_optima(result.local_optima, dedup_radius);
}

std::vector<LocalOptimum> harvest_local_optima(const RunResult& result, double dedup_radius) {
  std::vector<LocalOptimum> optima;
  for (const auto& s : result.segments) {
    if (s.converged()) optima.push_back({s.best_point, s.best_value});
  }
  return harvest_local_optima(optima, dedup_radius);
}

}  // namespace qaoams
