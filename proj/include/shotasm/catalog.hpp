#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "shotasm/labels.hpp"

namespace shotasm {

struct EnergySpec;

struct Shot {
    std::string id;
    std::optional<ShotSize> shot_size;
    std::optional<MotionType> motion;
    std::optional<std::string> description;
    std::optional<std::vector<double>> embedding;
    std::optional<double> duration_s;

    bool operator==(const Shot&) const = default;
};

// Validated, immutable collection of candidate shots plus the optional
// script the assembly should match semantically. Embeddings are stored with
// unit L2 norm.
class ShotCatalog {
public:
    // Validates ids, durations and embedding dimensions and normalizes all
    // embeddings. Throws shotasm::Error.
    static ShotCatalog create(std::vector<Shot> shots,
                              std::optional<std::vector<double>> script_embedding = std::nullopt,
                              std::optional<std::string> script_text = std::nullopt);

    std::size_t size() const noexcept { return shots_.size(); }
    const Shot& operator[](std::size_t i) const { return shots_[i]; }
    const std::vector<Shot>& shots() const noexcept { return shots_; }

    const std::optional<std::vector<double>>& script_embedding() const noexcept { return script_embedding_; }
    const std::optional<std::string>& script_text() const noexcept { return script_text_; }

    std::optional<std::size_t> find(std::string_view id) const;
    // Throws UnknownShotId.
    std::size_t index_of(std::string_view id) const;

    // Common embedding dimension, if any shot or the script carries one.
    std::optional<std::size_t> embedding_dim() const noexcept { return embedding_dim_; }
    bool all_shots_embedded() const noexcept;

    bool operator==(const ShotCatalog& other) const {
        return shots_ == other.shots_ && script_embedding_ == other.script_embedding_ &&
               script_text_ == other.script_text_;
    }

private:
    std::vector<Shot> shots_;
    std::optional<std::vector<double>> script_embedding_;
    std::optional<std::string> script_text_;
    std::optional<std::size_t> embedding_dim_;
    std::unordered_map<std::string, std::size_t> by_id_;
};

struct LabelEntry {
    std::optional<ShotSize> shot_size;
    std::optional<MotionType> motion;

    bool operator==(const LabelEntry&) const = default;
};

using LabelSequence = std::vector<LabelEntry>;

ShotCatalog parse_catalog(std::string_view json_text);
std::string serialize_catalog(const ShotCatalog& catalog);

// Accepts a JSON array (label strings, "SIZE,MOTION" strings, or objects with
// "shot_size"/"motion") or plain text with one "SIZE,MOTION" entry per line.
LabelSequence parse_reference(std::string_view text);
std::string serialize_reference(const LabelSequence& labels);

// Labels of the shots at the given catalog indices, in order.
LabelSequence labels_of(const ShotCatalog& catalog, const std::vector<std::size_t>& indices);

// Throws KExceedsN, MissingEmbeddings or EmbeddingDimMismatch.
void validate_instance(const ShotCatalog& catalog, std::size_t k, const EnergySpec& spec);

// Scales v to unit L2 norm in place; throws ZeroVector for a (near) zero vector.
void normalize_l2(std::vector<double>& v);

}  // namespace shotasm
