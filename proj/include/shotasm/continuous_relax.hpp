#pragma once

#include <cstddef>
#include <cstdint>

#include "shotasm/catalog.hpp"
#include "shotasm/dense.hpp"
#include "shotasm/discrete_optim.hpp"
#include "shotasm/energy.hpp"

namespace shotasm {

// Log-domain Sinkhorn over N x K logits: `iterations` rounds of column then
// row normalization, a final column normalization, then exp. Columns of the
// soft output sum to one. With hard = true each column is replaced by a
// one-hot at its argmax (lowest row index wins ties).
SelectionMatrix sinkhorn(const Dense& logits, std::size_t iterations, bool hard);

// Column-wise argmax one-hot of a soft selection.
SelectionMatrix harden(const Dense& soft);

struct ContinuousConfig {
    double eta = 0.01;
    double epsilon = 0.01;
    std::size_t iters = 1000;
    std::size_t sinkhorn_iters = 10;
    std::uint64_t seed = 0;

    void validate() const;
};

// Langevin dynamics on Sinkhorn logits: each step projects the logits,
// hardens and scores the projection, then moves the logits by
// -eta * grad E(X_s) + sqrt(2 * eta * epsilon) * N(0, I). Returns the best
// valid hardened selection seen; hardened selections that reuse a shot are
// counted in invalid_samples and never returned. Syntax terms only
// (gamma must be 0).
OptimizationResult continuous_langevin(const ShotCatalog& catalog, std::size_t k, const EnergySpec& spec,
                                       const ContinuousConfig& cfg);

}  // namespace shotasm
