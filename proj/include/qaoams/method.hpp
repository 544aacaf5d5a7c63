#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qaoams/localopt.hpp"
#include "qaoams/multistart.hpp"

namespace qaoams {

// An optimization method by name:
//   nelder-mead | pattern | model-tr          single local run
//   restarting:<local>                        restart after each convergence
//   multistart:<local>                        MLSL-style coordinator
struct MethodSpec {
  enum class Kind { kLocal, kRestarting, kMultistart };
  Kind kind = Kind::kLocal;
  LocalMethod local = LocalMethod::kModelTrustRegion;

  std::string name() const;
  bool operator==(const MethodSpec&) const = default;
};

MethodSpec parse_method(std::string_view name);
std::string valid_method_names();

struct MethodSettings {
  StopRule local_stop{};  // max_evals is ignored; the budget below applies
  std::size_t budget = 1000;
  std::uint64_t seed = 0;
  std::size_t sample_batch = 16;
  double sigma = 2.0;
  std::size_t max_active_runs = 1;  // multistart only; 0 means no limit
  // Starts tried before any random point (warm starts).
  std::vector<Point> initial_points;
};

struct MethodOutcome {
  EvalHistory history;
  // Local run that produced each evaluation; -1 for multistart samples.
  std::vector<int> run_id;
  std::size_t runs = 0;
  Termination status = Termination::kBudgetExhausted;
  std::vector<LocalOptimum> local_optima;
};

// Every method draws its first start (or first sample) as the first uniform
// point of Rng(seed), so runs sharing a seed share x0.
MethodOutcome run_method(const MethodSpec& method, const ObjectiveFn& f, const Bounds& bounds,
                         const MethodSettings& settings);

}  // namespace qaoams
