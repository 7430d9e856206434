#include "shotasm/continuous_relax.hpp"

#include <cmath>
#include <limits>

#include "search_internal.hpp"
#include "shotasm/error.hpp"

namespace shotasm {
namespace {

void normalize_columns(Dense& a) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
        double m = -std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < a.rows(); ++r) m = std::max(m, a(r, c));
        double s = 0.0;
        for (std::size_t r = 0; r < a.rows(); ++r) s += std::exp(a(r, c) - m);
        const double lse = m + std::log(s);
        for (std::size_t r = 0; r < a.rows(); ++r) a(r, c) -= lse;
    }
}

void normalize_rows(Dense& a) {
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto row = a.row(r);
        double m = -std::numeric_limits<double>::infinity();
        for (double v : row) m = std::max(m, v);
        double s = 0.0;
        for (double v : row) s += std::exp(v - m);
        const double lse = m + std::log(s);
        for (double& v : row) v -= lse;
    }
}

}  // namespace

SelectionMatrix harden(const Dense& soft) {
    SelectionMatrix out{Dense(soft.rows(), soft.cols(), 0.0), SelectionMode::Binary};
    for (std::size_t c = 0; c < soft.cols(); ++c) {
        std::size_t best = 0;
        for (std::size_t r = 1; r < soft.rows(); ++r) {
            if (soft(r, c) > soft(best, c)) best = r;
        }
        if (soft.rows() > 0) out.values(best, c) = 1.0;
    }
    return out;
}

SelectionMatrix sinkhorn(const Dense& logits, std::size_t iterations, bool hard) {
    if (iterations == 0) throw Error(ErrorCode::InvalidConfig, "sinkhorn needs at least one iteration");
    if (logits.rows() == 0 || logits.cols() == 0) throw Error(ErrorCode::ShapeMismatch, "empty logits");
    for (double v : logits.values()) {
        if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteInput, "sinkhorn logits");
    }
    Dense a = logits;
    for (std::size_t t = 0; t < iterations; ++t) {
        normalize_columns(a);
        normalize_rows(a);
    }
    normalize_columns(a);
    for (double& v : a.values()) v = std::exp(v);
    if (hard) return harden(a);
    return SelectionMatrix{std::move(a), SelectionMode::Continuous};
}

void ContinuousConfig::validate() const {
    if (!(eta > 0.0) || !std::isfinite(eta)) throw Error(ErrorCode::InvalidConfig, "eta must be > 0");
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw Error(ErrorCode::InvalidConfig, "epsilon must be >= 0");
    if (iters == 0) throw Error(ErrorCode::InvalidConfig, "iters must be positive");
    if (sinkhorn_iters == 0) throw Error(ErrorCode::InvalidConfig, "sinkhorn_iters must be positive");
}

OptimizationResult continuous_langevin(const ShotCatalog& catalog, std::size_t k, const EnergySpec& spec,
                                       const ContinuousConfig& cfg) {
    validate_instance(catalog, k, spec);
    cfg.validate();
    if (spec.gamma != 0.0) {
        throw Error(ErrorCode::InvalidSpec, "continuous relaxation covers the syntax terms only (gamma must be 0)");
    }
    const auto n = catalog.size();
    const EnergyModel model(catalog, spec);
    const Dense& weights = model.pair_weights();
    Rng rng(cfg.seed);

    Dense logits(n, k);
    for (double& v : logits.values()) v = rng.uniform01();

    const double noise_scale = std::sqrt(2.0 * cfg.eta * cfg.epsilon);
    detail::BestTracker tracker;
    OptimizationResult result;
    for (std::size_t t = 1; t <= cfg.iters; ++t) {
        const auto soft = sinkhorn(logits, cfg.sinkhorn_iters, false);
        if (auto seq = decode_selection(harden(soft.values))) {
            tracker.offer(seq->shots, model.evaluate(*seq));
        } else {
            ++result.invalid_samples;
        }
        result.trace.push_back(tracker.best());
        const Dense grad = bilinear_energy_gradient(soft.values, weights);
        auto lv = logits.values();
        const auto gv = grad.values();
        for (std::size_t i = 0; i < lv.size(); ++i) lv[i] += -cfg.eta * gv[i] + noise_scale * rng.normal();
    }

    const auto invalid = result.invalid_samples;
    auto trace = std::move(result.trace);
    result = detail::finalize("continuous", tracker, catalog, spec);
    result.iterations_used = cfg.iters;
    result.trace = std::move(trace);
    result.invalid_samples = invalid;
    return result;
}

}  // namespace shotasm
