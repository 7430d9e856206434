#include <algorithm>
#include <set>

#include "search_internal.hpp"

namespace shotasm {
namespace {

struct Candidate {
    std::vector<std::size_t> shots;
    double energy;
};

// Beam plus all neighbors, deduplicated by shot tuple, then the B lowest
// energies (stable, so earlier insertion wins ties).
std::vector<Candidate> expand_and_select(const std::vector<Candidate>& beam, const EnergyModel& model,
                                         std::size_t beam_size) {
    std::vector<Candidate> pool;
    std::set<std::vector<std::size_t>> seen;
    std::vector<bool> used;
    std::vector<std::size_t> buffer;
    for (const auto& member : beam) {
        if (seen.insert(member.shots).second) pool.push_back(member);
        detail::for_each_neighbor(member.shots, model.catalog_size(), used, buffer,
                                  [&](const std::vector<std::size_t>& s) {
                                      if (seen.insert(s).second) pool.push_back({s, model.evaluate(s)});
                                  });
    }
    std::stable_sort(pool.begin(), pool.end(),
                     [](const Candidate& a, const Candidate& b) { return a.energy < b.energy; });
    if (pool.size() > beam_size) pool.resize(beam_size);
    return pool;
}

double best_of(const std::vector<Candidate>& set) {
    double b = std::numeric_limits<double>::infinity();
    for (const auto& c : set) b = std::min(b, c.energy);
    return b;
}

OptimizationResult run_beam(const char* name, bool with_langevin, const ShotCatalog& catalog, std::size_t k,
                            const EnergySpec& spec, const OptimizerConfig& cfg) {
    detail::prepare_run(catalog, k, spec, cfg);
    const EnergyModel model(catalog, spec);
    Rng rng(cfg.seed);

    std::vector<Candidate> beam;
    for (auto& s : detail::initial_beam(catalog.size(), k, cfg.beam_size, rng)) {
        const double e = model.evaluate(s);
        beam.push_back({std::move(s.shots), e});
    }

    detail::BestTracker tracker;
    std::vector<double> trace;
    std::vector<double> population_trace;
    std::size_t iterations = 0;
    for (std::size_t iter = 1; iter <= cfg.max_iters; ++iter) {
        iterations = iter;
        if (with_langevin) {
            for (auto& member : beam) {
                tracker.offer(member.shots, member.energy);
                auto moved = detail::langevin_move(member.shots, member.energy, model, cfg, rng);
                member = {std::move(moved.shots), moved.energy};
            }
        }
        for (const auto& member : beam) tracker.offer(member.shots, member.energy);
        trace.push_back(tracker.best());
        if (tracker.should_stop(cfg)) {
            population_trace.push_back(best_of(beam));
            break;
        }
        beam = expand_and_select(beam, model, cfg.beam_size);
        population_trace.push_back(best_of(beam));
    }

    auto result = detail::finalize(name, tracker, catalog, spec);
    result.iterations_used = iterations;
    result.trace = std::move(trace);
    result.population_trace = std::move(population_trace);
    return result;
}

}  // namespace

OptimizationResult beam_search(const ShotCatalog& catalog, std::size_t k, const EnergySpec& spec,
                               const OptimizerConfig& cfg) {
    return run_beam("bs", false, catalog, k, spec, cfg);
}

OptimizationResult langevin_bs(const ShotCatalog& catalog, std::size_t k, const EnergySpec& spec,
                               const OptimizerConfig& cfg) {
    return run_beam("langevin-bs", true, catalog, k, spec, cfg);
}

}  // namespace shotasm
