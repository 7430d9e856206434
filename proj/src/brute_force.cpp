#include <cmath>
#include <limits>

#include "search_internal.hpp"
#include "shotasm/error.hpp"

namespace shotasm {

OptimizationResult brute_force(const ShotCatalog& catalog, std::size_t k, const EnergySpec& spec) {
    validate_instance(catalog, k, spec);
    const auto n = catalog.size();
    const auto total = count_permutations(n, k);
    if (total > kBruteForceLimit) {
        throw Error(ErrorCode::InstanceTooLarge,
                    std::to_string(n) + "!/(" + std::to_string(n) + "-" + std::to_string(k) +
                        ")! exceeds " + std::to_string(kBruteForceLimit));
    }
    const EnergyModel model(catalog, spec);

    double best = std::numeric_limits<double>::infinity();
    std::vector<std::vector<std::size_t>> ties;
    std::vector<double> tie_energies;

    std::vector<std::size_t> current(k);
    std::vector<bool> used(n, false);
    auto visit = [&](auto&& self, std::size_t depth) -> void {
        if (depth == k) {
            const double e = model.evaluate(current);
            if (e > best + kTieTolerance) return;
            if (e < best) {
                best = e;
                std::size_t keep = 0;
                for (std::size_t i = 0; i < ties.size(); ++i) {
                    if (tie_energies[i] <= best + kTieTolerance) {
                        ties[keep] = std::move(ties[i]);
                        tie_energies[keep] = tie_energies[i];
                        ++keep;
                    }
                }
                ties.resize(keep);
                tie_energies.resize(keep);
            }
            ties.push_back(current);
            tie_energies.push_back(e);
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
    visit(visit, 0);

    std::vector<Sequence> seqs;
    seqs.reserve(ties.size());
    for (auto& t : ties) seqs.push_back(Sequence{std::move(t)});
    OptimizationResult result;
    result.algorithm = "oracle";
    result.iterations_used = 1;
    detail::finalize_into(result, std::move(seqs), best, catalog, spec);
    return result;
}

}  // namespace shotasm
