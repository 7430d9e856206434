#include "shotasm/result_json.hpp"

#include <cmath>

namespace shotasm {
namespace {

nlohmann::ordered_json optional_number(const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json finite_or_null(double v) {
    return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

nlohmann::ordered_json result_to_json(const OptimizationResult& result, const ShotCatalog& catalog,
                                       nlohmann::ordered_json config, bool include_trace) {
    nlohmann::ordered_json doc;
    doc["config"] = std::move(config);
    doc["algorithm"] = result.algorithm;
    doc["best_energy"] = result.found() ? finite_or_null(result.best_energy) : nlohmann::ordered_json(nullptr);
    auto sequences = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < result.best_sequences.size(); ++i) {
        const auto& scores = result.component_scores[i];
        sequences.push_back({{"shot_ids", ids_of(catalog, result.best_sequences[i])},
                             {"score_size", optional_number(scores.score_size)},
                             {"score_motion", optional_number(scores.score_motion)},
                             {"cos_semantic", optional_number(scores.cos_semantic)}});
    }
    doc["sequences"] = std::move(sequences);
    doc["iterations_used"] = result.iterations_used;
    if (result.algorithm == "continuous") doc["invalid_samples"] = result.invalid_samples;
    if (include_trace) {
        auto trace = nlohmann::ordered_json::array();
        for (double e : result.trace) trace.push_back(finite_or_null(e));
        doc["trace"] = std::move(trace);
    }
    return doc;
}

}  // namespace shotasm
