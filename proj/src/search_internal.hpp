#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <vector>

#include "shotasm/discrete_optim.hpp"

namespace shotasm::detail {

// Global best energy and the distinct sequences tying it.
class BestTracker {
public:
    void offer(const std::vector<std::size_t>& shots, double energy) {
        if (energy > best_ + kTieTolerance) return;
        if (energy < best_) {
            best_ = energy;
            std::erase_if(ties_, [this](const auto& kv) { return kv.second > best_ + kTieTolerance; });
        }
        ties_.emplace(shots, energy);
    }

    double best() const noexcept { return best_; }
    std::size_t tie_count() const noexcept { return ties_.size(); }
    bool should_stop(const OptimizerConfig& cfg) const { return cfg.top_q && ties_.size() >= *cfg.top_q; }

    std::vector<Sequence> ties() const {
        std::vector<Sequence> out;
        out.reserve(ties_.size());
        for (const auto& [shots, e] : ties_) {
            out.push_back(Sequence{shots});
        }
        return out;
    }

private:
    double best_ = std::numeric_limits<double>::infinity();
    std::map<std::vector<std::size_t>, double> ties_;
};

// Visits every neighbor of `shots` in neighborhood() order. The span passed to
// fn is a scratch buffer valid only during the call.
template <typename Fn>
void for_each_neighbor(const std::vector<std::size_t>& shots, std::size_t n, std::vector<bool>& used_scratch,
                       std::vector<std::size_t>& buffer, Fn&& fn) {
    const auto k = shots.size();
    buffer = shots;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            std::swap(buffer[i], buffer[j]);
            fn(std::as_const(buffer));
            std::swap(buffer[i], buffer[j]);
        }
    }
    used_scratch.assign(n, false);
    for (auto s : shots) used_scratch[s] = true;
    for (std::size_t p = 0; p < k; ++p) {
        const auto original = buffer[p];
        for (std::size_t u = 0; u < n; ++u) {
            if (used_scratch[u]) continue;
            buffer[p] = u;
            fn(std::as_const(buffer));
        }
        buffer[p] = original;
    }
}

// Sorts ties by shot ids and attaches component scores.
OptimizationResult finalize(std::string algorithm, const BestTracker& tracker, const ShotCatalog& catalog,
                            const EnergySpec& spec);
void finalize_into(OptimizationResult& result, std::vector<Sequence> ties, double best_energy,
                   const ShotCatalog& catalog, const EnergySpec& spec);

// Up to `count` distinct random sequences; enumerates all of them when the
// space is no larger than `count`.
std::vector<Sequence> initial_beam(std::size_t n, std::size_t k, std::size_t count, Rng& rng);

// Lowest-energy neighbor, or nullopt for an empty neighborhood. Neighbors
// within kTieTolerance of the minimum tie; one of them is drawn uniformly
// (one rng draw, only when there is more than one).
struct Move {
    std::vector<std::size_t> shots;
    double energy;
};
std::optional<Move> best_neighbor(const std::vector<std::size_t>& shots, const EnergyModel& model, Rng& rng);

// Langevin-like move from `shots` (with energy `energy`); returns the state
// and energy after the Metropolis decision.
Move langevin_move(const std::vector<std::size_t>& shots, double energy, const EnergyModel& model,
                   const OptimizerConfig& cfg, Rng& rng);

void prepare_run(const ShotCatalog& catalog, std::size_t k, const EnergySpec& spec, const OptimizerConfig& cfg);

}  // namespace shotasm::detail
