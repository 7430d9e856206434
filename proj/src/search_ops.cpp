#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "search_internal.hpp"
#include "shotasm/error.hpp"

namespace shotasm {

void OptimizerConfig::validate() const {
    if (max_iters == 0) throw Error(ErrorCode::InvalidConfig, "max_iters must be positive");
    if (top_q && *top_q == 0) throw Error(ErrorCode::InvalidConfig, "top_q must be positive");
    if (beam_size == 0) throw Error(ErrorCode::InvalidConfig, "beam size must be positive");
    if (population == 0) throw Error(ErrorCode::InvalidConfig, "population must be positive");
    if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0))
        throw Error(ErrorCode::InvalidConfig, "crossover probability outside [0, 1]");
    if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0))
        throw Error(ErrorCode::InvalidConfig, "mutation probability outside [0, 1]");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw Error(ErrorCode::InvalidConfig, "epsilon must be > 0");
    if (!(temperature > 0.0) || !std::isfinite(temperature))
        throw Error(ErrorCode::InvalidConfig, "temperature must be > 0");
}

std::uint64_t count_permutations(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
        const std::uint64_t f = n - i;
        if (total > UINT64_MAX / f) return UINT64_MAX;
        total *= f;
    }
    return total;
}

std::vector<Sequence> neighborhood(const Sequence& seq, std::size_t catalog_size) {
    std::vector<Sequence> out;
    std::vector<bool> used;
    std::vector<std::size_t> buffer;
    detail::for_each_neighbor(seq.shots, catalog_size, used, buffer,
                              [&](const std::vector<std::size_t>& s) { out.push_back(Sequence{s}); });
    return out;
}

std::vector<Sequence> neighborhood(const Sequence& seq, const ShotCatalog& catalog) {
    validate_sequence(seq, catalog);
    return neighborhood(seq, catalog.size());
}

bool metropolis_accept(double delta_e, double epsilon, double temperature, double r) {
    if (delta_e <= 0.0) return true;
    return r < std::exp(-delta_e / (epsilon * temperature));
}

Sequence random_sequence(std::size_t n, std::size_t k, Rng& rng) {
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t p = 0; p < k; ++p) {
        const auto j = p + static_cast<std::size_t>(rng.below(n - p));
        std::swap(pool[p], pool[j]);
    }
    pool.resize(k);
    return Sequence{std::move(pool)};
}

namespace {

std::size_t draw_unused(std::vector<std::size_t>& unused, Rng& rng) {
    const auto j = static_cast<std::size_t>(rng.below(unused.size()));
    const auto shot = unused[j];
    unused.erase(unused.begin() + static_cast<std::ptrdiff_t>(j));
    return shot;
}

void repair(std::vector<std::size_t>& child, std::size_t n, Rng& rng) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> duplicate_slots;
    for (std::size_t p = 0; p < child.size(); ++p) {
        if (seen[child[p]]) {
            duplicate_slots.push_back(p);
        } else {
            seen[child[p]] = true;
        }
    }
    if (duplicate_slots.empty()) return;
    std::vector<std::size_t> unused;
    for (std::size_t s = 0; s < n; ++s) {
        if (!seen[s]) unused.push_back(s);
    }
    for (auto p : duplicate_slots) child[p] = draw_unused(unused, rng);
}

}  // namespace

std::pair<Sequence, Sequence> crossover(const Sequence& a, const Sequence& b, std::size_t n, Rng& rng) {
    const auto k = a.size();
    if (k < 2 || b.size() != k) return {a, b};
    const auto cut = 1 + static_cast<std::size_t>(rng.below(k - 1));
    Sequence c1, c2;
    c1.shots.reserve(k);
    c2.shots.reserve(k);
    c1.shots.insert(c1.shots.end(), a.shots.begin(), a.shots.begin() + static_cast<std::ptrdiff_t>(cut));
    c1.shots.insert(c1.shots.end(), b.shots.begin() + static_cast<std::ptrdiff_t>(cut), b.shots.end());
    c2.shots.insert(c2.shots.end(), b.shots.begin(), b.shots.begin() + static_cast<std::ptrdiff_t>(cut));
    c2.shots.insert(c2.shots.end(), a.shots.begin() + static_cast<std::ptrdiff_t>(cut), a.shots.end());
    repair(c1.shots, n, rng);
    repair(c2.shots, n, rng);
    return {std::move(c1), std::move(c2)};
}

Sequence mutate(const Sequence& seq, std::size_t n, Rng& rng) {
    Sequence out = seq;
    const auto k = seq.size();
    if (k == 0) return out;
    if (k < n) {
        std::vector<bool> used(n, false);
        for (auto s : seq.shots) used[s] = true;
        std::vector<std::size_t> unused;
        for (std::size_t s = 0; s < n; ++s) {
            if (!used[s]) unused.push_back(s);
        }
        const auto p = static_cast<std::size_t>(rng.below(k));
        out.shots[p] = draw_unused(unused, rng);
    } else if (k >= 2) {
        const auto i = static_cast<std::size_t>(rng.below(k));
        auto j = static_cast<std::size_t>(rng.below(k - 1));
        if (j >= i) ++j;
        std::swap(out.shots[i], out.shots[j]);
    }
    return out;
}

std::vector<double> selection_probabilities(const std::vector<double>& energies) {
    std::vector<double> p(energies.size());
    if (energies.empty()) return p;
    // fitness F = -E; softmax(F - max F)
    const double max_fitness = -*std::min_element(energies.begin(), energies.end());
    double total = 0.0;
    for (std::size_t i = 0; i < energies.size(); ++i) {
        p[i] = std::exp(-energies[i] - max_fitness);
        total += p[i];
    }
    for (double& v : p) v /= total;
    return p;
}

namespace detail {

std::optional<Move> best_neighbor(const std::vector<std::size_t>& shots, const EnergyModel& model, Rng& rng) {
    thread_local std::vector<bool> used;
    thread_local std::vector<std::size_t> buffer;
    std::vector<Move> ties;
    double best = std::numeric_limits<double>::infinity();
    for_each_neighbor(shots, model.catalog_size(), used, buffer, [&](const std::vector<std::size_t>& s) {
        const double e = model.evaluate(s);
        if (e < best - kTieTolerance) {
            best = e;
            ties.clear();
        }
        if (e <= best + kTieTolerance) ties.push_back(Move{s, e});
    });
    if (ties.empty()) return std::nullopt;
    if (ties.size() == 1) return std::move(ties.front());
    return std::move(ties[static_cast<std::size_t>(rng.below(ties.size()))]);
}

Move langevin_move(const std::vector<std::size_t>& shots, double energy, const EnergyModel& model,
                   const OptimizerConfig& cfg, Rng& rng) {
    auto candidate = best_neighbor(shots, model, rng);
    if (!candidate) return Move{shots, energy};
    const double r = rng.uniform01();
    if (metropolis_accept(candidate->energy - energy, cfg.epsilon, cfg.temperature, r)) return *candidate;
    return Move{shots, energy};
}

void prepare_run(const ShotCatalog& catalog, std::size_t k, const EnergySpec& spec, const OptimizerConfig& cfg) {
    validate_instance(catalog, k, spec);
    cfg.validate();
}

std::vector<Sequence> initial_beam(std::size_t n, std::size_t k, std::size_t count, Rng& rng) {
    std::vector<Sequence> beam;
    if (count_permutations(n, k) <= count) {
        // Enumerate every K-permutation in lexicographic order.
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::vector<std::size_t> current(k);
        std::vector<bool> used(n, false);
        auto rec = [&](auto&& self, std::size_t depth) -> void {
            if (depth == k) {
                beam.push_back(Sequence{current});
                return;
            }
            for (std::size_t s = 0; s < n; ++s) {
                if (used[s]) continue;
                used[s] = true;
                current[depth] = s;
                self(self, depth + 1);
                used[s] = false;
            }
        };
        rec(rec, 0);
        return beam;
    }
    std::map<std::vector<std::size_t>, bool> seen;
    std::size_t attempts = 0;
    while (beam.size() < count) {
        auto s = random_sequence(n, k, rng);
        ++attempts;
        if (seen.emplace(s.shots, true).second || attempts > 100 * count) beam.push_back(std::move(s));
    }
    return beam;
}

void finalize_into(OptimizationResult& result, std::vector<Sequence> ties, double best_energy,
                   const ShotCatalog& catalog, const EnergySpec& spec) {
    std::vector<std::pair<std::vector<std::string>, Sequence>> keyed;
    keyed.reserve(ties.size());
    for (auto& t : ties) keyed.emplace_back(ids_of(catalog, t), std::move(t));
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    result.best_energy = best_energy;
    result.best_sequences.clear();
    result.component_scores.clear();
    for (auto& [ids, seq] : keyed) {
        result.component_scores.push_back(component_scores(seq, catalog, spec));
        result.best_sequences.push_back(std::move(seq));
    }
}

OptimizationResult finalize(std::string algorithm, const BestTracker& tracker, const ShotCatalog& catalog,
                            const EnergySpec& spec) {
    OptimizationResult result;
    result.algorithm = std::move(algorithm);
    finalize_into(result, tracker.ties(), tracker.best(), catalog, spec);
    return result;
}

}  // namespace detail

Sequence langevin_local_step(const Sequence& seq, const EnergyModel& model, const OptimizerConfig& cfg, Rng& rng) {
    return Sequence{detail::langevin_move(seq.shots, model.evaluate(seq), model, cfg, rng).shots};
}

Sequence langevin_local_step(const Sequence& seq, const ShotCatalog& catalog, const EnergySpec& spec,
                             const OptimizerConfig& cfg, Rng& rng) {
    validate_sequence(seq, catalog);
    cfg.validate();
    return langevin_local_step(seq, EnergyModel(catalog, spec), cfg, rng);
}

}  // namespace shotasm
