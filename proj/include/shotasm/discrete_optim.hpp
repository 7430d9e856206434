#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shotasm/catalog.hpp"
#include "shotasm/energy.hpp"
#include "shotasm/rng.hpp"

namespace shotasm {

// Sequences whose energies differ from the best by at most this much tie.
inline constexpr double kTieTolerance = 1e-9;
// Largest number of K-permutations brute_force will enumerate.
inline constexpr std::uint64_t kBruteForceLimit = 10'000'000;

struct OptimizerConfig {
    std::size_t max_iters = 1000;
    // Stop once this many distinct sequences tie the current best energy.
    // Unset runs all max_iters iterations.
    std::optional<std::size_t> top_q;
    std::size_t beam_size = 10;
    std::size_t population = 20;
    double crossover_prob = 0.8;
    double mutation_prob = 0.5;
    // Metropolis scale: uphill moves are accepted with exp(-dE / (epsilon * T)).
    double epsilon = 0.1;
    double temperature = 1.0;
    std::uint64_t seed = 0;

    void validate() const;  // throws InvalidConfig
};

struct OptimizationResult {
    std::string algorithm;
    double best_energy = 0.0;
    // Tie set, sorted lexicographically by shot ids.
    std::vector<Sequence> best_sequences;
    std::vector<ComponentScores> component_scores;
    std::size_t iterations_used = 0;
    // Global best energy after each iteration.
    std::vector<double> trace;
    // Best energy in the working set (beam or population) at the end of each
    // iteration.
    std::vector<double> population_trace;
    // Continuous relaxation only: hardened samples rejected because two
    // positions picked the same shot.
    std::size_t invalid_samples = 0;

    bool found() const noexcept { return !best_sequences.empty(); }
};

// Number of ordered selections of k out of n, saturating at UINT64_MAX.
std::uint64_t count_permutations(std::size_t n, std::size_t k);

// Exhaustive enumeration of all K-permutations; throws InstanceTooLarge above
// kBruteForceLimit.
OptimizationResult brute_force(const ShotCatalog& catalog, std::size_t k, const EnergySpec& spec);

// All pairwise swaps (i < j), then every single-position replacement by an
// unselected shot (positions in order, replacement shots ascending).
std::vector<Sequence> neighborhood(const Sequence& seq, std::size_t catalog_size);
std::vector<Sequence> neighborhood(const Sequence& seq, const ShotCatalog& catalog);

// True when delta_e <= 0, else iff r < exp(-delta_e / (epsilon * temperature)).
bool metropolis_accept(double delta_e, double epsilon, double temperature, double r);

// One discrete Langevin-like move: jump to the best neighbor if the Metropolis
// test accepts the energy change. Ties for the best neighbor are broken
// uniformly at random.
Sequence langevin_local_step(const Sequence& seq, const EnergyModel& model, const OptimizerConfig& cfg, Rng& rng);
Sequence langevin_local_step(const Sequence& seq, const ShotCatalog& catalog, const EnergySpec& spec,
                             const OptimizerConfig& cfg, Rng& rng);

// Uniformly random valid sequence (partial Fisher-Yates).
Sequence random_sequence(std::size_t n, std::size_t k, Rng& rng);

// Single-point crossover with duplicate repair: later duplicates are refilled
// by uniform draws from shots unused in the child.
std::pair<Sequence, Sequence> crossover(const Sequence& a, const Sequence& b, std::size_t n, Rng& rng);
// Replace one uniform position with a uniform unused shot, or swap two
// positions when every shot is already used.
Sequence mutate(const Sequence& seq, std::size_t n, Rng& rng);
// Softmax of fitness -E, shifted by the max fitness.
std::vector<double> selection_probabilities(const std::vector<double>& energies);

OptimizationResult beam_search(const ShotCatalog& catalog, std::size_t k, const EnergySpec& spec,
                               const OptimizerConfig& cfg);
OptimizationResult genetic(const ShotCatalog& catalog, std::size_t k, const EnergySpec& spec,
                           const OptimizerConfig& cfg);
OptimizationResult langevin_bs(const ShotCatalog& catalog, std::size_t k, const EnergySpec& spec,
                               const OptimizerConfig& cfg);
OptimizationResult langevin_ga(const ShotCatalog& catalog, std::size_t k, const EnergySpec& spec,
                               const OptimizerConfig& cfg);

}  // namespace shotasm
