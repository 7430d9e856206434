#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shotasm/algorithms.hpp"
#include "shotasm/catalog.hpp"
#include "shotasm/energy.hpp"
#include "shotasm/rng.hpp"

namespace shotasm {

// Fixed5c3: 5 shots, pick 3, every label present.
// Random5c3: 5 shots, pick 3, labels dropped independently.
// ExtendedRandom: (N, K) uniform over N in [5, 10], K in [3, 7], K <= N,
// labels dropped independently.
enum class Scenario { Fixed5c3, Random5c3, ExtendedRandom };

inline constexpr double kDefaultDropProbability = 0.2;

std::string_view to_string(Scenario s);
std::optional<Scenario> parse_scenario(std::string_view name);
std::vector<Scenario> all_scenarios();
std::size_t default_sample_count(Scenario s);

struct Instance {
    ShotCatalog catalog;
    std::size_t k = 0;
    EnergySpec spec;
};

// Built-in matrices, alpha = beta = 0.5, gamma = 0.
EnergySpec syntax_spec();

Instance generate_instance(Scenario scenario, Rng& rng, double drop_probability = kDefaultDropProbability);

struct PlantedInstance {
    Instance instance;
    Sequence planted;
    double planted_energy = 0.0;
};

// k shots labelled MS/STABLE (every transition among them scores 1 in both
// matrices, energy -(k - 1)); the other n - k shots are ECU with a non-STABLE
// motion, so every transition leaving one of them scores below 1 in the size
// matrix. Shot order in the catalog is shuffled.
PlantedInstance generate_planted_instance(std::size_t n, std::size_t k, Rng& rng);

struct AblationConfig {
    AlgorithmConfig algorithms;
    std::uint64_t seed = 0;
    double drop_probability = kDefaultDropProbability;
    // Overrides of default_sample_count, indexed like Scenario.
    std::optional<std::size_t> fixed_samples, random_samples, extended_samples;
    // 0 picks std::thread::hardware_concurrency().
    std::size_t threads = 0;

    std::size_t samples_for(Scenario s) const;
};

struct AccuracyRow {
    Algorithm algorithm;
    Scenario scenario;
    std::size_t samples = 0;
    std::size_t successes = 0;
    double accuracy = 0.0;
};

struct InstanceRecord {
    Scenario scenario;
    std::size_t index = 0;
    std::size_t n = 0;
    std::size_t k = 0;
    double oracle_energy = 0.0;
    // Per algorithm, in the table's algorithm order; +inf when nothing valid
    // was found.
    std::vector<double> energies;
    std::vector<bool> success;
};

struct AccuracyTable {
    std::vector<Algorithm> algorithms;
    std::vector<Scenario> scenarios;
    std::vector<AccuracyRow> rows;
    std::vector<InstanceRecord> records;

    const AccuracyRow& row(Algorithm a, Scenario s) const;
};

// Seed of instance `index` of `scenario` under a master seed.
std::uint64_t instance_seed(std::uint64_t master, Scenario scenario, std::size_t index);

// Every instance is solved by brute force and by each algorithm; success
// means the algorithm's best energy is within kTieTolerance of the oracle's.
// Output is independent of the thread count.
AccuracyTable run_ablation(const std::vector<Algorithm>& algorithms, const std::vector<Scenario>& scenarios,
                           const AblationConfig& cfg);

// "algorithm,scenario,samples,accuracy"
std::string accuracy_csv(const AccuracyTable& table);
std::string accuracy_json(const AccuracyTable& table, const AblationConfig& cfg);

struct StyleScores {
    std::optional<double> size_mse;
    std::optional<double> motion_mse;
};

// MSE between the style matrices of the output and the reference per
// alphabet. An alphabet without transitions on either side is left empty;
// throws NoTransitions when neither alphabet can be compared.
StyleScores evaluate_style(const LabelSequence& output, const LabelSequence& reference);

struct StyleTrial {
    StyleScores optimized;
    StyleScores random_mean;
};

// One style-emulation trial: draw a reference that mostly cycles through a
// random ordering of each alphabet, learn both transition matrices from it,
// assemble k of n uniformly labelled shots with the learned matrices as score
// matrices, and compare the assembly's style MSE against the mean over
// `random_assemblies` uniform random assemblies.
StyleTrial run_style_trial(Rng& rng, const OptimizerConfig& cfg, std::size_t n = 20, std::size_t k = 10,
                           std::size_t reference_length = 40, std::size_t random_assemblies = 100);

}  // namespace shotasm
