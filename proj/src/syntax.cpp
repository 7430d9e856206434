#include "shotasm/syntax.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "shotasm/error.hpp"

namespace shotasm {
namespace {

// clang-format off
constexpr double kShotSizeScores[kShotSizeCount][kShotSizeCount] = {
    //  ELS   LS   MS   CU   ECU
    {0.0, 0.5, 1.0, 0.0, 0.0},  // ELS
    {0.5, 0.6, 1.0, 1.0, 0.0},  // LS
    {1.0, 1.0, 1.0, 1.0, 1.0},  // MS
    {0.0, 0.6, 0.8, 0.6, 1.0},  // CU
    {0.0, 0.0, 0.3, 1.0, 0.0},  // ECU
};

constexpr double kMotionScores[kMotionCount][kMotionCount] = {
    // STABLE UP  DOWN LEFT RIGHT OUT  IN
    {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0},  // STABLE
    {1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 1.0},  // UP
    {1.0, 0.0, 1.0, 0.0, 0.0, 1.0, 1.0},  // DOWN
    {1.0, 0.0, 0.0, 1.0, 0.0, 1.0, 1.0},  // LEFT
    {1.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0},  // RIGHT
    {1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0},  // OUT
    {1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0},  // IN
};
// clang-format on

std::optional<std::size_t> label_index(const LabelEntry& e, Alphabet a) {
    if (a == Alphabet::ShotSize) {
        if (e.shot_size) return index_of(*e.shot_size);
    } else if (e.motion) {
        return index_of(*e.motion);
    }
    return std::nullopt;
}

}  // namespace

TransitionMatrix TransitionMatrix::zeros(Alphabet a) {
    const auto n = alphabet_size(a);
    return TransitionMatrix{alphabet_labels(a), Dense(n, n, 0.0), false};
}

std::optional<Alphabet> TransitionMatrix::known_alphabet() const {
    if (alphabet == alphabet_labels(Alphabet::ShotSize)) return Alphabet::ShotSize;
    if (alphabet == alphabet_labels(Alphabet::Motion)) return Alphabet::Motion;
    return std::nullopt;
}

TransitionMatrix builtin_shot_size_matrix() {
    auto m = TransitionMatrix::zeros(Alphabet::ShotSize);
    for (std::size_t i = 0; i < kShotSizeCount; ++i)
        for (std::size_t j = 0; j < kShotSizeCount; ++j) m.values(i, j) = kShotSizeScores[i][j];
    return m;
}

TransitionMatrix builtin_motion_matrix() {
    auto m = TransitionMatrix::zeros(Alphabet::Motion);
    for (std::size_t i = 0; i < kMotionCount; ++i)
        for (std::size_t j = 0; j < kMotionCount; ++j) m.values(i, j) = kMotionScores[i][j];
    return m;
}

Dense transition_counts(const LabelSequence& labels, Alphabet alphabet) {
    const auto n = alphabet_size(alphabet);
    Dense counts(n, n, 0.0);
    for (std::size_t t = 0; t + 1 < labels.size(); ++t) {
        const auto from = label_index(labels[t], alphabet);
        const auto to = label_index(labels[t + 1], alphabet);
        if (from && to) counts(*from, *to) += 1.0;
    }
    return counts;
}

TransitionMatrix learn_transition_matrix(const LabelSequence& reference, Alphabet alphabet) {
    auto counts = transition_counts(reference, alphabet);
    double total = 0.0;
    for (double c : counts.values()) total += c;
    if (total == 0.0) {
        throw Error(ErrorCode::NoTransitions,
                    "no consecutive " + std::string(to_string(alphabet)) + " labels in sequence");
    }
    for (double& c : counts.values()) c /= total;
    return TransitionMatrix{alphabet_labels(alphabet), std::move(counts), true};
}

TransitionMatrix sequence_style_matrix(const LabelSequence& labels, Alphabet alphabet) {
    return learn_transition_matrix(labels, alphabet);
}

double matrix_mse(const TransitionMatrix& a, const TransitionMatrix& b) {
    if (a.alphabet != b.alphabet || a.values.rows() != b.values.rows() || a.values.cols() != b.values.cols()) {
        throw Error(ErrorCode::AlphabetMismatch, std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
    const auto va = a.values.values();
    const auto vb = b.values.values();
    double acc = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) {
        const double d = va[i] - vb[i];
        acc += d * d;
    }
    return va.empty() ? 0.0 : acc / static_cast<double>(va.size());
}

double matrix_sum(const TransitionMatrix& m) {
    double s = 0.0;
    for (double v : m.values.values()) s += v;
    return s;
}

TransitionMatrix parse_matrix_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedJson, e.what());
    }
    try {
        TransitionMatrix m;
        m.alphabet = doc.at("alphabet").get<std::vector<std::string>>();
        const auto rows = doc.at("rows").get<std::vector<std::vector<double>>>();
        const auto n = m.alphabet.size();
        if (n == 0 || rows.size() != n) {
            throw Error(ErrorCode::ShapeMismatch, "matrix must be square over its alphabet");
        }
        m.values = Dense(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            if (rows[i].size() != n) throw Error(ErrorCode::ShapeMismatch, "row " + std::to_string(i));
            for (std::size_t j = 0; j < n; ++j) {
                if (!std::isfinite(rows[i][j])) throw Error(ErrorCode::NonFiniteInput, "matrix entry");
                m.values(i, j) = rows[i][j];
            }
        }
        m.learned = doc.value("learned", false);
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedJson, e.what());
    }
}

std::string serialize_matrix_json(const TransitionMatrix& m) {
    nlohmann::ordered_json doc;
    doc["alphabet"] = m.alphabet;
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        const auto r = m.values.row(i);
        rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    doc["rows"] = std::move(rows);
    doc["learned"] = m.learned;
    return doc.dump(2) + "\n";
}

std::string matrix_to_csv(const TransitionMatrix& m) {
    std::ostringstream out;
    out.precision(17);
    out << "from";
    for (const auto& l : m.alphabet) out << ',' << l;
    out << '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
        out << m.alphabet[i];
        for (std::size_t j = 0; j < m.size(); ++j) out << ',' << m.values(i, j);
        out << '\n';
    }
    return out.str();
}

}  // namespace shotasm
