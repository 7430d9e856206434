#include "shotasm/energy.hpp"

#include <algorithm>
#include <cmath>

#include "shotasm/error.hpp"

namespace shotasm {
namespace {

constexpr double kZeroNorm = 1e-12;

void require_alphabet(const TransitionMatrix& m, Alphabet a) {
    if (m.known_alphabet() != a) {
        throw Error(ErrorCode::AlphabetMismatch,
                    std::string(to_string(a)) + " matrix expected, got alphabet of size " + std::to_string(m.size()));
    }
}

double size_pair_score(const Shot& from, const Shot& to, const TransitionMatrix& g) {
    if (!from.shot_size || !to.shot_size) return 0.0;
    return g(index_of(*from.shot_size), index_of(*to.shot_size));
}

double motion_pair_score(const Shot& from, const Shot& to, const TransitionMatrix& m) {
    if (!from.motion || !to.motion) return 0.0;
    return m(index_of(*from.motion), index_of(*to.motion));
}

// Cosine between the unit-normalized mean of K embeddings and a unit script.
// row(p) yields the embedding at position p. Shared by the free function and
// EnergyModel so both give bit-identical results.
template <typename RowFn>
double cosine_of_mean(std::size_t k, std::size_t dim, RowFn row, std::span<const double> script) {
    std::vector<double> mean(dim, 0.0);
    for (std::size_t p = 0; p < k; ++p) {
        const auto e = row(p);
        for (std::size_t d = 0; d < dim; ++d) mean[d] += e[d];
    }
    double norm2 = 0.0;
    for (double& v : mean) {
        v /= static_cast<double>(k);
        norm2 += v * v;
    }
    const double norm = std::sqrt(norm2);
    if (norm < kZeroNorm) throw Error(ErrorCode::ZeroVector, "mean embedding of the sequence vanishes");
    double dot = 0.0;
    for (std::size_t d = 0; d < dim; ++d) dot += (mean[d] / norm) * script[d];
    return std::clamp(dot, -1.0, 1.0);
}

void check_seq(const Sequence& seq, const ShotCatalog& catalog) {
    for (auto i : seq.shots) {
        if (i >= catalog.size()) throw Error(ErrorCode::UnknownShotId, "index " + std::to_string(i));
    }
}

}  // namespace

Sequence sequence_from_ids(const ShotCatalog& catalog, const std::vector<std::string>& ids) {
    Sequence seq;
    seq.shots.reserve(ids.size());
    for (const auto& id : ids) seq.shots.push_back(catalog.index_of(id));
    return seq;
}

std::vector<std::string> ids_of(const ShotCatalog& catalog, const Sequence& seq) {
    std::vector<std::string> ids;
    ids.reserve(seq.size());
    for (auto i : seq.shots) ids.push_back(catalog[i].id);
    return ids;
}

bool is_valid_sequence(const Sequence& seq, std::size_t n, std::size_t k) {
    if (seq.size() != k || k == 0) return false;
    std::vector<bool> used(n, false);
    for (auto i : seq.shots) {
        if (i >= n || used[i]) return false;
        used[i] = true;
    }
    return true;
}

void validate_sequence(const Sequence& seq, const ShotCatalog& catalog) {
    if (seq.shots.empty()) throw Error(ErrorCode::EmptySequence, "sequence has no shots");
    check_seq(seq, catalog);
    if (!is_valid_sequence(seq, catalog.size(), seq.size())) {
        throw Error(ErrorCode::InvalidSequence, "a shot appears more than once");
    }
}

EnergySpec EnergySpec::create(double alpha, double beta, double gamma, std::optional<TransitionMatrix> size_matrix,
                              std::optional<TransitionMatrix> motion_matrix,
                              std::optional<std::vector<double>> script_embedding) {
    EnergySpec spec{alpha, beta, gamma, std::move(size_matrix), std::move(motion_matrix), std::move(script_embedding)};
    if (spec.script_embedding) normalize_l2(*spec.script_embedding);
    spec.validate();
    return spec;
}

void EnergySpec::validate() const {
    for (double w : {alpha, beta, gamma}) {
        if (!std::isfinite(w) || w < 0.0) throw Error(ErrorCode::InvalidSpec, "weights must be finite and >= 0");
    }
    if (alpha + beta + gamma <= 0.0) throw Error(ErrorCode::InvalidSpec, "at least one weight must be positive");
    if (alpha > 0.0) {
        if (!size_matrix) throw Error(ErrorCode::InvalidSpec, "alpha > 0 requires a shot-size matrix");
        require_alphabet(*size_matrix, Alphabet::ShotSize);
    }
    if (beta > 0.0) {
        if (!motion_matrix) throw Error(ErrorCode::InvalidSpec, "beta > 0 requires a motion matrix");
        require_alphabet(*motion_matrix, Alphabet::Motion);
    }
}

double shot_size_score(const Sequence& seq, const ShotCatalog& catalog, const TransitionMatrix& g) {
    check_seq(seq, catalog);
    require_alphabet(g, Alphabet::ShotSize);
    double score = 0.0;
    for (std::size_t p = 0; p + 1 < seq.size(); ++p) {
        score += size_pair_score(catalog[seq.shots[p]], catalog[seq.shots[p + 1]], g);
    }
    return score;
}

double shot_size_energy(const Sequence& seq, const ShotCatalog& catalog, const TransitionMatrix& g) {
    return -shot_size_score(seq, catalog, g);
}

double motion_score(const Sequence& seq, const ShotCatalog& catalog, const TransitionMatrix& m) {
    check_seq(seq, catalog);
    require_alphabet(m, Alphabet::Motion);
    double score = 0.0;
    for (std::size_t p = 0; p + 1 < seq.size(); ++p) {
        score += motion_pair_score(catalog[seq.shots[p]], catalog[seq.shots[p + 1]], m);
    }
    return score;
}

double motion_energy(const Sequence& seq, const ShotCatalog& catalog, const TransitionMatrix& m) {
    return -motion_score(seq, catalog, m);
}

double semantic_cosine(const Sequence& seq, const ShotCatalog& catalog, std::span<const double> script) {
    check_seq(seq, catalog);
    if (seq.shots.empty()) throw Error(ErrorCode::EmptySequence, "semantic energy of an empty sequence");
    for (auto i : seq.shots) {
        const auto& e = catalog[i].embedding;
        if (!e) throw Error(ErrorCode::MissingEmbeddings, "shot '" + catalog[i].id + "' has no embedding");
        if (e->size() != script.size()) throw Error(ErrorCode::EmbeddingDimMismatch, "shot vs script embedding");
    }
    return cosine_of_mean(
        seq.size(), script.size(),
        [&](std::size_t p) { return std::span<const double>(*catalog[seq.shots[p]].embedding); }, script);
}

double semantic_energy(const Sequence& seq, const ShotCatalog& catalog, std::span<const double> script) {
    return -semantic_cosine(seq, catalog, script);
}

JointEnergy joint_energy(const Sequence& seq, const ShotCatalog& catalog, const EnergySpec& spec) {
    spec.validate();
    JointEnergy out;
    if (spec.alpha > 0.0) out.e_g = shot_size_energy(seq, catalog, *spec.size_matrix);
    if (spec.beta > 0.0) out.e_m = motion_energy(seq, catalog, *spec.motion_matrix);
    if (spec.gamma > 0.0) {
        if (!spec.script_embedding) throw Error(ErrorCode::MissingEmbeddings, "no script embedding");
        out.e_se = semantic_energy(seq, catalog, *spec.script_embedding);
    }
    out.total = spec.alpha * out.e_g + spec.beta * out.e_m + spec.gamma * out.e_se;
    return out;
}

ComponentScores component_scores(const Sequence& seq, const ShotCatalog& catalog, const EnergySpec& spec) {
    ComponentScores s;
    if (spec.size_matrix) s.score_size = shot_size_score(seq, catalog, *spec.size_matrix);
    if (spec.motion_matrix) s.score_motion = motion_score(seq, catalog, *spec.motion_matrix);
    if (spec.script_embedding) {
        const bool embedded = std::all_of(seq.shots.begin(), seq.shots.end(),
                                          [&](std::size_t i) { return catalog[i].embedding.has_value(); });
        if (embedded && !seq.shots.empty()) s.cos_semantic = semantic_cosine(seq, catalog, *spec.script_embedding);
    }
    return s;
}

EnergyModel::EnergyModel(const ShotCatalog& catalog, const EnergySpec& spec)
    : n_(catalog.size()),
      alpha_(spec.alpha),
      beta_(spec.beta),
      gamma_(spec.gamma),
      size_pairs_(n_, n_, 0.0),
      motion_pairs_(n_, n_, 0.0),
      pair_weights_(n_, n_, 0.0) {
    spec.validate();
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            if (spec.size_matrix) size_pairs_(i, j) = size_pair_score(catalog[i], catalog[j], *spec.size_matrix);
            if (spec.motion_matrix)
                motion_pairs_(i, j) = motion_pair_score(catalog[i], catalog[j], *spec.motion_matrix);
            pair_weights_(i, j) = alpha_ * size_pairs_(i, j) + beta_ * motion_pairs_(i, j);
        }
    }
    if (gamma_ > 0.0) {
        if (!spec.script_embedding) throw Error(ErrorCode::MissingEmbeddings, "no script embedding");
        script_ = *spec.script_embedding;
        const auto dim = script_.size();
        embeddings_ = Dense(n_, dim);
        for (std::size_t i = 0; i < n_; ++i) {
            const auto& e = catalog[i].embedding;
            if (!e) throw Error(ErrorCode::MissingEmbeddings, "shot '" + catalog[i].id + "' has no embedding");
            if (e->size() != dim) throw Error(ErrorCode::EmbeddingDimMismatch, "shot vs script embedding");
            std::copy(e->begin(), e->end(), embeddings_.row(i).begin());
        }
    }
}

double EnergyModel::evaluate(std::span<const std::size_t> shots) const {
    double e_g = 0.0;
    double e_m = 0.0;
    double e_se = 0.0;
    if (alpha_ > 0.0) {
        double score = 0.0;
        for (std::size_t p = 0; p + 1 < shots.size(); ++p) score += size_pairs_(shots[p], shots[p + 1]);
        e_g = -score;
    }
    if (beta_ > 0.0) {
        double score = 0.0;
        for (std::size_t p = 0; p + 1 < shots.size(); ++p) score += motion_pairs_(shots[p], shots[p + 1]);
        e_m = -score;
    }
    if (gamma_ > 0.0) {
        e_se = -cosine_of_mean(
            shots.size(), script_.size(), [&](std::size_t p) { return embeddings_.row(shots[p]); }, script_);
    }
    return alpha_ * e_g + beta_ * e_m + gamma_ * e_se;
}

SelectionMatrix encode_selection(const Sequence& seq, std::size_t n) {
    SelectionMatrix x{Dense(n, seq.size(), 0.0), SelectionMode::Binary};
    for (std::size_t k = 0; k < seq.size(); ++k) {
        if (seq.shots[k] >= n) throw Error(ErrorCode::UnknownShotId, "index " + std::to_string(seq.shots[k]));
        x.values(seq.shots[k], k) = 1.0;
    }
    return x;
}

std::optional<Sequence> decode_selection(const SelectionMatrix& x) {
    const auto n = x.values.rows();
    const auto k = x.values.cols();
    Sequence seq;
    std::vector<bool> used(n, false);
    for (std::size_t c = 0; c < k; ++c) {
        std::optional<std::size_t> chosen;
        for (std::size_t r = 0; r < n; ++r) {
            const double v = x.values(r, c);
            if (v == 1.0) {
                if (chosen) return std::nullopt;
                chosen = r;
            } else if (v != 0.0) {
                return std::nullopt;
            }
        }
        if (!chosen || used[*chosen]) return std::nullopt;
        used[*chosen] = true;
        seq.shots.push_back(*chosen);
    }
    return seq;
}

double bilinear_energy(const Dense& x, const Dense& w) {
    if (x.rows() != w.rows() || w.rows() != w.cols()) {
        throw Error(ErrorCode::ShapeMismatch, "selection rows must match catalog size");
    }
    const auto n = x.rows();
    const auto k = x.cols();
    double acc = 0.0;
    for (std::size_t c = 0; c + 1 < k; ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            const double xi = x(i, c);
            if (xi == 0.0) continue;
            double inner = 0.0;
            for (std::size_t j = 0; j < n; ++j) inner += x(j, c + 1) * w(i, j);
            acc += xi * inner;
        }
    }
    return -acc;
}

Dense bilinear_energy_gradient(const Dense& x, const Dense& w) {
    if (x.rows() != w.rows() || w.rows() != w.cols()) {
        throw Error(ErrorCode::ShapeMismatch, "selection rows must match catalog size");
    }
    const auto n = x.rows();
    const auto k = x.cols();
    Dense grad(n, k, 0.0);
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            double g = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (c + 1 < k) g += x(j, c + 1) * w(i, j);
                if (c > 0) g += x(j, c - 1) * w(j, i);
            }
            grad(i, c) = -g;
        }
    }
    return grad;
}

double matrix_energy(const SelectionMatrix& x, const ShotCatalog& catalog, const EnergySpec& spec) {
    if (x.values.rows() != catalog.size()) throw Error(ErrorCode::ShapeMismatch, "selection rows != N");
    EnergySpec bilinear = spec;
    bilinear.gamma = 0.0;
    if (bilinear.alpha + bilinear.beta <= 0.0) return 0.0;
    return bilinear_energy(x.values, EnergyModel(catalog, bilinear).pair_weights());
}

Dense matrix_energy_gradient(const SelectionMatrix& x, const ShotCatalog& catalog, const EnergySpec& spec) {
    if (x.values.rows() != catalog.size()) throw Error(ErrorCode::ShapeMismatch, "selection rows != N");
    EnergySpec bilinear = spec;
    bilinear.gamma = 0.0;
    if (bilinear.alpha + bilinear.beta <= 0.0) return Dense(x.values.rows(), x.values.cols(), 0.0);
    return bilinear_energy_gradient(x.values, EnergyModel(catalog, bilinear).pair_weights());
}

}  // namespace shotasm
