#include "shotasm/algorithms.hpp"

#include <array>

namespace shotasm {
namespace {

constexpr std::array<std::pair<Algorithm, std::string_view>, 6> kNames = {{
    {Algorithm::Oracle, "oracle"},
    {Algorithm::BeamSearch, "bs"},
    {Algorithm::Genetic, "ga"},
    {Algorithm::LangevinBeam, "langevin-bs"},
    {Algorithm::LangevinGenetic, "langevin-ga"},
    {Algorithm::Continuous, "continuous"},
}};

}  // namespace

std::string_view to_string(Algorithm a) {
    for (const auto& [alg, name] : kNames) {
        if (alg == a) return name;
    }
    return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
    for (const auto& [alg, n] : kNames) {
        if (n == name) return alg;
    }
    return std::nullopt;
}

std::vector<Algorithm> search_algorithms() {
    return {Algorithm::Continuous, Algorithm::BeamSearch, Algorithm::Genetic, Algorithm::LangevinBeam,
            Algorithm::LangevinGenetic};
}

bool is_discrete_search(Algorithm a) {
    return a == Algorithm::BeamSearch || a == Algorithm::Genetic || a == Algorithm::LangevinBeam ||
           a == Algorithm::LangevinGenetic;
}

OptimizationResult run_algorithm(Algorithm a, const ShotCatalog& catalog, std::size_t k, const EnergySpec& spec,
                                 const AlgorithmConfig& cfg) {
    switch (a) {
    case Algorithm::Oracle: return brute_force(catalog, k, spec);
    case Algorithm::BeamSearch: return beam_search(catalog, k, spec, cfg.discrete);
    case Algorithm::Genetic: return genetic(catalog, k, spec, cfg.discrete);
    case Algorithm::LangevinBeam: return langevin_bs(catalog, k, spec, cfg.discrete);
    case Algorithm::LangevinGenetic: return langevin_ga(catalog, k, spec, cfg.discrete);
    case Algorithm::Continuous: return continuous_langevin(catalog, k, spec, cfg.continuous);
    }
    return brute_force(catalog, k, spec);
}

}  // namespace shotasm
