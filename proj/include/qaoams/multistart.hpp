#pragma once

#include <cstdint>
#include <vector>

#include "qaoams/localopt.hpp"

namespace qaoams {

struct MultistartConfig {
  std::size_t total_budget = 1000;
  std::size_t sample_batch = 8;
  double sigma = 2.0;
  StopRule local_stop{};
  std::uint64_t seed = 0;
  // Upper bound on local runs advanced at the same time; 0 means no limit.
  std::size_t max_active_runs = 0;
  // Evaluated before the first uniform batch and treated like samples.
  std::vector<Point> initial_points;

  void validate() const;
};

enum class StartProvenance { kSampled, kHistoryPoint };

struct LocalOptimum {
  Point point;
  double value = 0.0;
};

struct MultistartRun {
  RunSegment segment;      // first/count are unused: runs interleave
  std::size_t start_index = 0;  // history index of the start point
  StartProvenance provenance = StartProvenance::kSampled;
  std::vector<std::size_t> eval_indices;  // history indices this run produced
};

struct MultistartResult {
  EvalHistory history;
  // Run that produced each history entry, -1 for samples.
  std::vector<int> run_of;
  std::vector<MultistartRun> runs;
  std::vector<LocalOptimum> local_optima;
  std::size_t sample_evals = 0;
};

// MLSL critical distance
//   r_k = pi^(-1/2) [Gamma(1 + d/2) vol sigma ln(kN) / (kN)]^(1/d)
double critical_radius(std::size_t batches, std::size_t batch_size, std::size_t dim, double volume,
                       double sigma);

// True iff no other history point within `radius` of the candidate has a
// strictly smaller value and the candidate is not within `radius` of any
// point in `minima` (found optima and active runs' current bests).
bool should_start_run(const EvalHistory& history, std::size_t candidate, double radius,
                      const std::vector<Point>& minima);

// Sample, pick MLSL-eligible starts among all evaluated points, then advance
// the launched local runs round-robin one evaluation at a time until they
// all converge; repeat until the budget is spent.
MultistartResult multistart_minimize(const ObjectiveFn& f, const Bounds& bounds, LocalMethod local,
                                     const MultistartConfig& config);

// Merge optima closer than dedup_radius (keeping the better one); ascending f.
std::vector<LocalOptimum> harvest_local_optima(const std::vector<LocalOptimum>& optima,
                                               double dedup_radius);
std::vector<LocalOptimum> harvest_local_optima(const MultistartResult& result, double dedup_radius);
// Uses the best point of every converged segment.
std::vector<LocalOptimum> harvest_local_optima(const RunResult& result, double dedup_radius);

}  // namespace qaoams
