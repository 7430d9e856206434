#pragma once

#include <string>

#include <json.hpp>

#include "shotasm/catalog.hpp"
#include "shotasm/discrete_optim.hpp"

namespace shotasm {

// {config, best_energy, sequences:[{shot_ids, score_size, score_motion,
// cos_semantic}], iterations_used, trace?}
nlohmann::ordered_json result_to_json(const OptimizationResult& result, const ShotCatalog& catalog,
                                       nlohmann::ordered_json config, bool include_trace);

}  // namespace shotasm
