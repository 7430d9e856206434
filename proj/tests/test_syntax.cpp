#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "shotasm/error.hpp"
#include "shotasm/rng.hpp"
#include "shotasm/syntax.hpp"

using namespace shotasm;

namespace {

using S = ShotSize;
using M = MotionType;

LabelSequence sizes(std::initializer_list<S> list) {
    LabelSequence out;
    for (auto s : list) out.push_back({s, std::nullopt});
    return out;
}

LabelSequence motions(std::initializer_list<M> list) {
    LabelSequence out;
    for (auto m : list) out.push_back({std::nullopt, m});
    return out;
}

double sum_of_squares(const TransitionMatrix& m) {
    double s = 0.0;
    for (double v : m.values.values()) s += v * v;
    return s;
}

}  // namespace

TEST(BuiltinMatrices, ShotSizeEntries) {
    const auto g = builtin_shot_size_matrix();
    EXPECT_EQ(g.size(), 5u);
    EXPECT_EQ(g(index_of(S::MS), index_of(S::CU)), 1.0);
    EXPECT_EQ(g(index_of(S::ELS), index_of(S::CU)), 0.0);
    EXPECT_EQ(g(index_of(S::ECU), index_of(S::MS)), 0.3);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(g(i, j), oracle::kSizeTable[i][j]) << i << "," << j;
    EXPECT_FALSE(g.learned);
}

TEST(BuiltinMatrices, MotionEntries) {
    const auto m = builtin_motion_matrix();
    EXPECT_EQ(m.size(), 7u);
    EXPECT_EQ(m(index_of(M::STABLE), index_of(M::IN)), 1.0);
    EXPECT_EQ(m(index_of(M::UP), index_of(M::DOWN)), 0.0);
    EXPECT_EQ(m(index_of(M::OUT), index_of(M::IN)), 0.0);
    for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = 0; j < 7; ++j) EXPECT_EQ(m(i, j), oracle::kMotionTable[i][j]) << i << "," << j;
}

TEST(LearnTransitionMatrix, HandCountFixture) {
    const auto w = learn_transition_matrix(sizes({S::MS, S::CU, S::MS, S::CU}), Alphabet::ShotSize);
    EXPECT_TRUE(w.learned);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            double expected = 0.0;
            if (i == index_of(S::MS) && j == index_of(S::CU)) expected = 2.0 / 3.0;
            if (i == index_of(S::CU) && j == index_of(S::MS)) expected = 1.0 / 3.0;
            EXPECT_NEAR(w(i, j), expected, 1e-15);
        }
    EXPECT_NEAR(matrix_sum(w), 1.0, 1e-9);
}

TEST(LearnTransitionMatrix, SelfTransitionAndErrors) {
    const auto w = learn_transition_matrix(sizes({S::MS, S::MS}), Alphabet::ShotSize);
    EXPECT_EQ(w(index_of(S::MS), index_of(S::MS)), 1.0);
    EXPECT_EQ(matrix_sum(w), 1.0);
    EXPECT_THROW(learn_transition_matrix(sizes({S::MS}), Alphabet::ShotSize), Error);
    try {
        learn_transition_matrix(sizes({S::MS, S::CU}), Alphabet::Motion);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoTransitions);
    }
}

TEST(LearnTransitionMatrix, SkipsPairsWithMissingLabels) {
    LabelSequence seq{{S::MS, M::UP}, {std::nullopt, M::UP}, {S::CU, std::nullopt}, {S::ECU, M::IN}};
    const auto g = learn_transition_matrix(seq, Alphabet::ShotSize);
    EXPECT_EQ(g(index_of(S::CU), index_of(S::ECU)), 1.0);
    const auto m = learn_transition_matrix(seq, Alphabet::Motion);
    EXPECT_EQ(m(index_of(M::UP), index_of(M::UP)), 1.0);
}

TEST(LearnTransitionMatrix, RandomMatchesHandCounts) {
    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t len = 2 + rng.below(40);
        LabelSequence seq;
        std::vector<std::optional<std::size_t>> raw;
        for (std::size_t i = 0; i < len; ++i) {
            std::optional<std::size_t> m;
            if (rng.uniform01() < 0.9) m = rng.below(kMotionCount);
            raw.push_back(m);
            seq.push_back({std::nullopt, m ? std::optional(motion_at(*m)) : std::nullopt});
        }
        const auto counts = oracle::hand_counts(raw, kMotionCount);
        double total = 0.0;
        for (const auto& row : counts) total = std::accumulate(row.begin(), row.end(), total);
        if (total == 0.0) {
            EXPECT_THROW(learn_transition_matrix(seq, Alphabet::Motion), Error);
            continue;
        }
        const auto w = learn_transition_matrix(seq, Alphabet::Motion);
        EXPECT_NEAR(matrix_sum(w), 1.0, 1e-9);
        for (std::size_t i = 0; i < kMotionCount; ++i)
            for (std::size_t j = 0; j < kMotionCount; ++j) {
                EXPECT_GE(w(i, j), 0.0);
                EXPECT_NEAR(w(i, j) * total, counts[i][j], 1e-9);
            }
    }
}

TEST(LearnTransitionMatrix, PermutationCovariant) {
    // Relabel sizes by a bijection; rows and columns move identically.
    const std::size_t perm[5] = {3, 0, 4, 1, 2};
    Rng rng(5);
    LabelSequence seq, relabeled;
    for (int i = 0; i < 30; ++i) {
        const auto s = rng.below(5);
        seq.push_back({shot_size_at(s), std::nullopt});
        relabeled.push_back({shot_size_at(perm[s]), std::nullopt});
    }
    const auto a = learn_transition_matrix(seq, Alphabet::ShotSize);
    const auto b = learn_transition_matrix(relabeled, Alphabet::ShotSize);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(a(i, j), b(perm[i], perm[j]));
}

TEST(MatrixMse, Cases) {
    const auto g = builtin_shot_size_matrix();
    EXPECT_EQ(matrix_mse(g, g), 0.0);
    const auto zeros = TransitionMatrix::zeros(Alphabet::ShotSize);
    EXPECT_NEAR(sum_of_squares(g), 12.31, 1e-12);
    EXPECT_NEAR(matrix_mse(g, zeros), 0.4924, 1e-12);
    EXPECT_EQ(matrix_mse(g, zeros), matrix_mse(zeros, g));
    try {
        matrix_mse(g, builtin_motion_matrix());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::AlphabetMismatch);
    }
}

TEST(MatrixMse, PermutationInvariant) {
    const auto a = builtin_motion_matrix();
    const auto b = learn_transition_matrix(motions({M::UP, M::IN, M::STABLE, M::UP, M::OUT}), Alphabet::Motion);
    const std::size_t perm[7] = {6, 2, 0, 5, 1, 3, 4};
    auto pa = a;
    auto pb = b;
    for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = 0; j < 7; ++j) {
            pa.values(perm[i], perm[j]) = a(i, j);
            pb.values(perm[i], perm[j]) = b(i, j);
        }
    EXPECT_NEAR(matrix_mse(a, b), matrix_mse(pa, pb), 1e-15);
    EXPECT_GT(matrix_mse(a, b), 0.0);
}

TEST(SequenceStyleMatrix, Cases) {
    const auto w = sequence_style_matrix(sizes({S::MS, S::CU}), Alphabet::ShotSize);
    EXPECT_EQ(w(index_of(S::MS), index_of(S::CU)), 1.0);
    const auto m = sequence_style_matrix(motions({M::STABLE, M::STABLE, M::UP}), Alphabet::Motion);
    EXPECT_EQ(m(index_of(M::STABLE), index_of(M::STABLE)), 0.5);
    EXPECT_EQ(m(index_of(M::STABLE), index_of(M::UP)), 0.5);
    EXPECT_THROW(sequence_style_matrix(sizes({S::LS}), Alphabet::ShotSize), Error);
}

TEST(MatrixFiles, JsonRoundTripAndCsv) {
    const auto w = learn_transition_matrix(sizes({S::MS, S::CU, S::MS, S::CU}), Alphabet::ShotSize);
    EXPECT_EQ(parse_matrix_json(serialize_matrix_json(w)), w);
    const auto g = builtin_motion_matrix();
    EXPECT_EQ(parse_matrix_json(serialize_matrix_json(g)), g);
    const auto csv = matrix_to_csv(builtin_shot_size_matrix());
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "from,ELS,LS,MS,CU,ECU");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
}

TEST(MatrixFiles, RejectsBadShapes) {
    EXPECT_THROW(parse_matrix_json(R"({"alphabet":["MS","CU"],"rows":[[1,0]]})"), Error);
    EXPECT_THROW(parse_matrix_json(R"({"alphabet":["MS","CU"],"rows":[[1,0],[0]]})"), Error);
    EXPECT_THROW(parse_matrix_json("[1,2]"), Error);
}
