#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shotasm/catalog.hpp"
#include "shotasm/dense.hpp"
#include "shotasm/syntax.hpp"

namespace shotasm {

// Ordered selection of K distinct catalog indices.
struct Sequence {
    std::vector<std::size_t> shots;

    std::size_t size() const noexcept { return shots.size(); }
    auto operator<=>(const Sequence&) const = default;
};

Sequence sequence_from_ids(const ShotCatalog& catalog, const std::vector<std::string>& ids);
std::vector<std::string> ids_of(const ShotCatalog& catalog, const Sequence& seq);

// Throws EmptySequence, UnknownShotId, or InvalidSequence (duplicates).
void validate_sequence(const Sequence& seq, const ShotCatalog& catalog);
bool is_valid_sequence(const Sequence& seq, std::size_t n, std::size_t k);

// Weights and inputs of the joint energy
//   alpha * E_size + beta * E_motion + gamma * E_semantic.
struct EnergySpec {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    std::optional<TransitionMatrix> size_matrix;
    std::optional<TransitionMatrix> motion_matrix;
    std::optional<std::vector<double>> script_embedding;

    // Checks weights and that every positive weight has its inputs; the script
    // embedding is normalized. Throws InvalidSpec / ZeroVector.
    static EnergySpec create(double alpha, double beta, double gamma,
                             std::optional<TransitionMatrix> size_matrix = std::nullopt,
                             std::optional<TransitionMatrix> motion_matrix = std::nullopt,
                             std::optional<std::vector<double>> script_embedding = std::nullopt);

    void validate() const;
};

struct JointEnergy {
    double total = 0.0;
    double e_g = 0.0;
    double e_m = 0.0;
    double e_se = 0.0;
};

double shot_size_score(const Sequence& seq, const ShotCatalog& catalog, const TransitionMatrix& g);
double shot_size_energy(const Sequence& seq, const ShotCatalog& catalog, const TransitionMatrix& g);
double motion_score(const Sequence& seq, const ShotCatalog& catalog, const TransitionMatrix& m);
double motion_energy(const Sequence& seq, const ShotCatalog& catalog, const TransitionMatrix& m);
// Cosine between the normalized mean shot embedding and the script.
double semantic_cosine(const Sequence& seq, const ShotCatalog& catalog, std::span<const double> script);
double semantic_energy(const Sequence& seq, const ShotCatalog& catalog, std::span<const double> script);
JointEnergy joint_energy(const Sequence& seq, const ShotCatalog& catalog, const EnergySpec& spec);

// Raw per-sequence scores reported alongside results; a field is empty when
// its inputs are unavailable.
struct ComponentScores {
    std::optional<double> score_size;
    std::optional<double> score_motion;
    std::optional<double> cos_semantic;
};
ComponentScores component_scores(const Sequence& seq, const ShotCatalog& catalog, const EnergySpec& spec);

// Precomputed shot-pair score tables for fast repeated evaluation inside the
// optimizers. evaluate() performs the same arithmetic as joint_energy(), so
// both produce bit-identical totals.
class EnergyModel {
public:
    EnergyModel(const ShotCatalog& catalog, const EnergySpec& spec);

    std::size_t catalog_size() const noexcept { return n_; }
    double evaluate(std::span<const std::size_t> shots) const;
    double evaluate(const Sequence& seq) const { return evaluate(seq.shots); }

    // alpha * size_score(i, j) + beta * motion_score(i, j), shot-indexed.
    const Dense& pair_weights() const noexcept { return pair_weights_; }

private:
    std::size_t n_;
    double alpha_, beta_, gamma_;
    Dense size_pairs_;
    Dense motion_pairs_;
    Dense pair_weights_;
    Dense embeddings_;  // N x D, empty unless gamma > 0
    std::vector<double> script_;
};

enum class SelectionMode { Binary, Continuous };

// N x K assignment of shots (rows) to positions (columns).
struct SelectionMatrix {
    Dense values;
    SelectionMode mode = SelectionMode::Continuous;
};

SelectionMatrix encode_selection(const Sequence& seq, std::size_t n);
// Sequence encoded by a binary matrix, or nullopt when a column is not
// one-hot or a shot is used twice.
std::optional<Sequence> decode_selection(const SelectionMatrix& x);

// Bilinear form -sum_k sum_i sum_j x[i][k] x[j][k+1] W[i][j] with
// W = alpha * G' + beta * M' (shot-indexed, absent label -> 0).
double matrix_energy(const SelectionMatrix& x, const ShotCatalog& catalog, const EnergySpec& spec);
Dense matrix_energy_gradient(const SelectionMatrix& x, const ShotCatalog& catalog, const EnergySpec& spec);

// Same forms over an explicit shot-pair weight matrix.
double bilinear_energy(const Dense& x, const Dense& pair_weights);
Dense bilinear_energy_gradient(const Dense& x, const Dense& pair_weights);

}  // namespace shotasm
