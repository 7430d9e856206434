#pragma once

// Independent reference implementations used by the tests. Nothing here calls
// into the library's scoring code; the tables are transcribed separately.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "shotasm/catalog.hpp"
#include "shotasm/dense.hpp"
#include "shotasm/labels.hpp"

namespace oracle {

// Shot size, rows = previous, columns = next: ELS LS MS CU ECU.
inline constexpr double kSizeTable[5][5] = {
    {0.0, 0.5, 1.0, 0.0, 0.0},
    {0.5, 0.6, 1.0, 1.0, 0.0},
    {1.0, 1.0, 1.0, 1.0, 1.0},
    {0.0, 0.6, 0.8, 0.6, 1.0},
    {0.0, 0.0, 0.3, 1.0, 0.0},
};

// Motion: STABLE UP DOWN LEFT RIGHT OUT IN.
inline constexpr double kMotionTable[7][7] = {
    {1, 1, 1, 1, 1, 1, 1},
    {1, 1, 0, 0, 0, 1, 1},
    {1, 0, 1, 0, 0, 1, 1},
    {1, 0, 0, 1, 0, 1, 1},
    {1, 0, 0, 0, 1, 1, 1},
    {1, 0, 0, 0, 0, 1, 0},
    {1, 0, 0, 0, 0, 0, 1},
};

inline std::size_t sz(shotasm::ShotSize s) { return static_cast<std::size_t>(s); }
inline std::size_t mo(shotasm::MotionType m) { return static_cast<std::size_t>(m); }

// Score of the pair (a -> b) under a table, 0 when either label is missing.
template <typename L, std::size_t A>
double pair_score(const std::optional<L>& a, const std::optional<L>& b, const double (&table)[A][A]) {
    if (!a || !b) return 0.0;
    return table[static_cast<std::size_t>(*a)][static_cast<std::size_t>(*b)];
}

inline double size_score(const shotasm::ShotCatalog& c, const std::vector<std::size_t>& seq) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        s += pair_score(c[seq[i]].shot_size, c[seq[i + 1]].shot_size, kSizeTable);
    return s;
}

inline double motion_score(const shotasm::ShotCatalog& c, const std::vector<std::size_t>& seq) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        s += pair_score(c[seq[i]].motion, c[seq[i + 1]].motion, kMotionTable);
    return s;
}

inline double syntax_energy(const shotasm::ShotCatalog& c, const std::vector<std::size_t>& seq, double alpha,
                            double beta) {
    return -(alpha * size_score(c, seq) + beta * motion_score(c, seq));
}

// Literal triple sum -sum_k sum_i sum_j x[i][k] x[j][k+1] W[i][j].
inline double triple_sum(const shotasm::Dense& x, const shotasm::ShotCatalog& c, double alpha, double beta) {
    double e = 0.0;
    for (std::size_t k = 0; k + 1 < x.cols(); ++k)
        for (std::size_t i = 0; i < x.rows(); ++i)
            for (std::size_t j = 0; j < x.rows(); ++j) {
                const double w = alpha * pair_score(c[i].shot_size, c[j].shot_size, kSizeTable) +
                                 beta * pair_score(c[i].motion, c[j].motion, kMotionTable);
                e -= x(i, k) * x(j, k + 1) * w;
            }
    return e;
}

inline shotasm::Dense central_difference(const std::function<double(const shotasm::Dense&)>& f,
                                         const shotasm::Dense& x, double h) {
    shotasm::Dense g(x.rows(), x.cols());
    shotasm::Dense probe = x;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t k = 0; k < x.cols(); ++k) {
            const double orig = probe(i, k);
            probe(i, k) = orig + h;
            const double up = f(probe);
            probe(i, k) = orig - h;
            const double down = f(probe);
            probe(i, k) = orig;
            g(i, k) = (up - down) / (2 * h);
        }
    return g;
}

// Transition counts by direct pair walk.
inline std::vector<std::vector<double>> hand_counts(const std::vector<std::optional<std::size_t>>& labels,
                                                    std::size_t alphabet) {
    std::vector<std::vector<double>> c(alphabet, std::vector<double>(alphabet, 0.0));
    for (std::size_t i = 0; i + 1 < labels.size(); ++i)
        if (labels[i] && labels[i + 1]) c[*labels[i]][*labels[i + 1]] += 1.0;
    return c;
}

struct Enumerated {
    double best = 0.0;
    std::vector<std::vector<std::size_t>> ties;
    std::size_t count = 0;
};

// Every K-permutation via combinations x next_permutation.
inline Enumerated enumerate(std::size_t n, std::size_t k,
                            const std::function<double(const std::vector<std::size_t>&)>& energy) {
    Enumerated out;
    out.best = std::numeric_limits<double>::infinity();
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
        std::vector<std::size_t> chosen;
        for (std::size_t i = 0; i < n; ++i)
            if (pick[i]) chosen.push_back(i);
        std::sort(chosen.begin(), chosen.end());
        do {
            ++out.count;
            const double e = energy(chosen);
            if (e < out.best - 1e-9) {
                out.best = e;
                out.ties.clear();
            }
            if (std::abs(e - out.best) <= 1e-9) out.ties.push_back(chosen);
        } while (std::next_permutation(chosen.begin(), chosen.end()));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    std::sort(out.ties.begin(), out.ties.end());
    return out;
}

inline shotasm::Shot shot(std::string id, std::optional<shotasm::ShotSize> size,
                          std::optional<shotasm::MotionType> motion = std::nullopt) {
    shotasm::Shot s;
    s.id = std::move(id);
    s.shot_size = size;
    s.motion = motion;
    return s;
}

}  // namespace oracle
