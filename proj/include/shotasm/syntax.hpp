#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shotasm/catalog.hpp"
#include "shotasm/dense.hpp"
#include "shotasm/labels.hpp"

namespace shotasm {

// Square score or probability matrix over a label alphabet.
// values(i, j) scores the transition from label i (previous shot) to label j
// (next shot).
struct TransitionMatrix {
    std::vector<std::string> alphabet;
    Dense values;
    // Set for matrices estimated from reference sequences; those sum to one.
    bool learned = false;

    static TransitionMatrix zeros(Alphabet a);

    std::size_t size() const noexcept { return alphabet.size(); }
    double operator()(std::size_t from, std::size_t to) const { return values(from, to); }

    // Which built-in alphabet the labels spell, if any.
    std::optional<Alphabet> known_alphabet() const;

    bool operator==(const TransitionMatrix&) const = default;
};

TransitionMatrix builtin_shot_size_matrix();
TransitionMatrix builtin_motion_matrix();

// Raw counts of consecutive (i -> j) pairs where both labels are present.
Dense transition_counts(const LabelSequence& labels, Alphabet alphabet);

// Counts normalized by the total number of observed transitions, so the
// whole matrix sums to one. Throws NoTransitions when nothing was counted.
TransitionMatrix learn_transition_matrix(const LabelSequence& reference, Alphabet alphabet);

// Style matrix of an assembled output; same estimator as the reference one.
TransitionMatrix sequence_style_matrix(const LabelSequence& labels, Alphabet alphabet);

// Mean of squared entrywise differences. Throws AlphabetMismatch.
double matrix_mse(const TransitionMatrix& a, const TransitionMatrix& b);

// {"alphabet":[...], "rows":[[...]]}
TransitionMatrix parse_matrix_json(std::string_view text);
std::string serialize_matrix_json(const TransitionMatrix& m);
// Header row "from,<labels...>", then one row per source label.
std::string matrix_to_csv(const TransitionMatrix& m);

// Sum of all entries.
double matrix_sum(const TransitionMatrix& m);

}  // namespace shotasm
