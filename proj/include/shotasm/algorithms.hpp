#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "shotasm/continuous_relax.hpp"
#include "shotasm/discrete_optim.hpp"

namespace shotasm {

enum class Algorithm { Oracle, BeamSearch, Genetic, LangevinBeam, LangevinGenetic, Continuous };

// CLI names: oracle, bs, ga, langevin-bs, langevin-ga, continuous.
std::string_view to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

// The five compared search methods (everything but the oracle).
std::vector<Algorithm> search_algorithms();
bool is_discrete_search(Algorithm a);

struct AlgorithmConfig {
    OptimizerConfig discrete;
    ContinuousConfig continuous;
};

// Runs `a` with the seed taken from the matching config.
OptimizationResult run_algorithm(Algorithm a, const ShotCatalog& catalog, std::size_t k, const EnergySpec& spec,
                                 const AlgorithmConfig& cfg);

}  // namespace shotasm
