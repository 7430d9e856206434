#include <algorithm>
#include <limits>

#include "search_internal.hpp"

namespace shotasm {
namespace {

std::size_t sample_index(const std::vector<double>& cumulative, Rng& rng) {
    const double u = rng.uniform01() * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return std::min(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

// Softmax selection of P parents, then pairwise crossover and mutation into a
// full replacement population.
std::vector<Sequence> breed(const std::vector<Sequence>& population, const std::vector<double>& energies,
                            std::size_t n, const OptimizerConfig& cfg, Rng& rng) {
    const auto p = population.size();
    const auto probs = selection_probabilities(energies);
    std::vector<double> cumulative(p);
    double acc = 0.0;
    for (std::size_t i = 0; i < p; ++i) cumulative[i] = (acc += probs[i]);

    std::vector<Sequence> parents;
    parents.reserve(p);
    for (std::size_t i = 0; i < p; ++i) parents.push_back(population[sample_index(cumulative, rng)]);

    std::vector<Sequence> next;
    next.reserve(p);
    while (next.size() < p) {
        const auto& a = parents[static_cast<std::size_t>(rng.below(p))];
        const auto& b = parents[static_cast<std::size_t>(rng.below(p))];
        auto children = rng.uniform01() < cfg.crossover_prob ? crossover(a, b, n, rng) : std::make_pair(a, b);
        for (Sequence* child : {&children.first, &children.second}) {
            if (rng.uniform01() < cfg.mutation_prob) *child = mutate(*child, n, rng);
        }
        next.push_back(std::move(children.first));
        if (next.size() < p) next.push_back(std::move(children.second));
    }
    return next;
}

OptimizationResult run_genetic(const char* name, bool with_langevin, const ShotCatalog& catalog, std::size_t k,
                               const EnergySpec& spec, const OptimizerConfig& cfg) {
    detail::prepare_run(catalog, k, spec, cfg);
    const auto n = catalog.size();
    const EnergyModel model(catalog, spec);
    Rng rng(cfg.seed);

    std::vector<Sequence> population;
    population.reserve(cfg.population);
    for (std::size_t i = 0; i < cfg.population; ++i) population.push_back(random_sequence(n, k, rng));
    std::vector<double> energies(population.size());
    for (std::size_t i = 0; i < population.size(); ++i) energies[i] = model.evaluate(population[i]);

    detail::BestTracker tracker;
    std::vector<double> trace;
    std::vector<double> population_trace;
    std::size_t iterations = 0;
    for (std::size_t iter = 1; iter <= cfg.max_iters; ++iter) {
        iterations = iter;
        for (std::size_t i = 0; i < population.size(); ++i) tracker.offer(population[i].shots, energies[i]);
        if (with_langevin) {
            for (std::size_t i = 0; i < population.size(); ++i) {
                auto moved = detail::langevin_move(population[i].shots, energies[i], model, cfg, rng);
                population[i].shots = std::move(moved.shots);
                energies[i] = moved.energy;
                tracker.offer(population[i].shots, energies[i]);
            }
        }
        trace.push_back(tracker.best());
        if (tracker.should_stop(cfg)) {
            population_trace.push_back(*std::min_element(energies.begin(), energies.end()));
            break;
        }
        population = breed(population, energies, n, cfg, rng);
        for (std::size_t i = 0; i < population.size(); ++i) energies[i] = model.evaluate(population[i]);
        population_trace.push_back(*std::min_element(energies.begin(), energies.end()));
    }

    auto result = detail::finalize(name, tracker, catalog, spec);
    result.iterations_used = iterations;
    result.trace = std::move(trace);
    result.population_trace = std::move(population_trace);
    return result;
}

}  // namespace

OptimizationResult genetic(const ShotCatalog& catalog, std::size_t k, const EnergySpec& spec,
                           const OptimizerConfig& cfg) {
    return run_genetic("ga", false, catalog, k, spec, cfg);
}

OptimizationResult langevin_ga(const ShotCatalog& catalog, std::size_t k, const EnergySpec& spec,
                               const OptimizerConfig& cfg) {
    return run_genetic("langevin-ga", true, catalog, k, spec, cfg);
}

}  // namespace shotasm
