#pragma once

#include <string>

#include <json.hpp>

#include "qaoams/bench.hpp"
#include "qaoams/method.hpp"

namespace qaoams {

using Json = nlohmann::ordered_json;

// Flat configs: every key optional, unknown keys and wrong types rejected.
Json to_json(const FixedBudgetConfig& c);
Json to_json(const ReuseConfig& c);
FixedBudgetConfig fixed_budget_config_from_json(const Json& j);
ReuseConfig reuse_config_from_json(const Json& j);

// A manifest wraps the config that produced an output directory; passing a
// manifest back as a config reruns the experiment.
Json experiment_manifest(const ExperimentResult& r);
Json reuse_manifest(const ReuseResult& r);
// Accepts a flat config or a manifest written by the functions above.
Json config_section(const Json& document, const std::string& command);

Json to_json(const RunResult& r);
Json to_json(const MethodOutcome& r, const std::string& method);

// eval_index,x0,...,x{d-1},f
std::string trace_csv(const EvalHistory& h);
// eval_index,run_id,x0,...,f
std::string trace_csv(const EvalHistory& h, const std::vector<int>& run_id);

}  // namespace qaoams
