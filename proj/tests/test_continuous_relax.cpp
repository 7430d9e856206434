#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "shotasm/continuous_relax.hpp"
#include "shotasm/error.hpp"
#include "shotasm/syntax.hpp"

using namespace shotasm;

namespace {

double column_sum(const Dense& x, std::size_t k) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) s += x(i, k);
    return s;
}

}  // namespace

TEST(Sinkhorn, UniformLogits) {
    const auto x = sinkhorn(Dense(2, 2, 0.7), 10, false);
    EXPECT_EQ(x.mode, SelectionMode::Continuous);
    for (double v : x.values.values()) EXPECT_NEAR(v, 0.5, 1e-12);
}

TEST(Sinkhorn, DominantDiagonalHardensToIdentity) {
    Dense logits(2, 2);
    logits(0, 0) = 10.0;
    logits(1, 1) = 10.0;
    const auto x = sinkhorn(logits, 5, true);
    EXPECT_EQ(x.mode, SelectionMode::Binary);
    EXPECT_EQ(x.values(0, 0), 1.0);
    EXPECT_EQ(x.values(1, 1), 1.0);
    EXPECT_EQ(x.values(0, 1), 0.0);
    EXPECT_EQ(x.values(1, 0), 0.0);
}

TEST(Sinkhorn, ColumnsSumToOne) {
    Rng rng(1);
    for (int t = 0; t < 100; ++t) {
        Dense logits(6, 3);
        for (double& v : logits.values()) v = 4.0 * rng.normal();
        const auto x = sinkhorn(logits, 1 + rng.below(20), false);
        for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(column_sum(x.values, k), 1.0, 1e-6);
        for (double v : x.values.values()) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
    }
}

TEST(Sinkhorn, RejectsBadInput) {
    Dense logits(2, 2);
    logits(0, 1) = std::numeric_limits<double>::quiet_NaN();
    try {
        sinkhorn(logits, 3, false);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonFiniteInput);
    }
    logits(0, 1) = std::numeric_limits<double>::infinity();
    EXPECT_THROW(sinkhorn(logits, 3, false), Error);
    EXPECT_THROW(sinkhorn(Dense(2, 2), 0, false), Error);
}

TEST(Harden, TiesGoToLowestRowAndIdempotent) {
    Dense soft(3, 2, 0.0);
    soft(1, 0) = 0.4;
    soft(2, 0) = 0.4;
    soft(0, 1) = 0.9;
    const auto h = harden(soft);
    EXPECT_EQ(h.values(1, 0), 1.0);
    EXPECT_EQ(h.values(2, 0), 0.0);
    EXPECT_EQ(h.values(0, 1), 1.0);
    EXPECT_EQ(harden(h.values).values, h.values);
}

TEST(Harden, CollisionIsInvalid) {
    Dense soft(3, 2, 0.0);
    soft(0, 0) = 0.9;
    soft(0, 1) = 0.9;
    EXPECT_FALSE(decode_selection(harden(soft)).has_value());
}

TEST(ContinuousLangevin, FindsLargeMarginOptimumMostly) {
    // N = K = 3 with one ordering scoring 2 in both matrices and a clear gap.
    const auto c = ShotCatalog::create({oracle::shot("a", ShotSize::LS, MotionType::UP),
                                        oracle::shot("b", ShotSize::MS, MotionType::IN),
                                        oracle::shot("d", ShotSize::ECU, MotionType::IN)});
    const auto spec = EnergySpec::create(0.5, 0.5, 0.0, builtin_shot_size_matrix(), builtin_motion_matrix());
    const auto truth = brute_force(c, 3, spec);
    ASSERT_EQ(truth.best_sequences.size(), 1u);
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        ContinuousConfig cfg;
        cfg.seed = seed;
        cfg.iters = 200;
        const auto r = continuous_langevin(c, 3, spec, cfg);
        if (r.found() && r.best_energy <= truth.best_energy + kTieTolerance) ++hits;
    }
    EXPECT_GT(hits, 50);
}

TEST(ContinuousLangevin, ZeroMatricesGiveZero) {
    const auto c = ShotCatalog::create({oracle::shot("a", ShotSize::LS), oracle::shot("b", ShotSize::MS),
                                        oracle::shot("d", ShotSize::ECU), oracle::shot("e", ShotSize::CU)});
    const auto spec = EnergySpec::create(1.0, 0.0, 0.0, TransitionMatrix::zeros(Alphabet::ShotSize));
    ContinuousConfig cfg;
    cfg.iters = 50;
    const auto r = continuous_langevin(c, 2, spec, cfg);
    ASSERT_TRUE(r.found());
    EXPECT_EQ(r.best_energy, 0.0);
    EXPECT_EQ(r.algorithm, "continuous");
    EXPECT_EQ(r.trace.size(), 50u);
    for (const auto& s : r.best_sequences) EXPECT_TRUE(is_valid_sequence(s, 4, 2));
}

TEST(ContinuousLangevin, DeterministicAndRejectsSemantic) {
    const auto c = ShotCatalog::create({oracle::shot("a", ShotSize::LS), oracle::shot("b", ShotSize::MS),
                                        oracle::shot("d", ShotSize::ECU), oracle::shot("e", ShotSize::CU),
                                        oracle::shot("f", ShotSize::ELS)});
    const auto spec = EnergySpec::create(1.0, 0.0, 0.0, builtin_shot_size_matrix());
    ContinuousConfig cfg;
    cfg.seed = 8;
    cfg.iters = 100;
    const auto a = continuous_langevin(c, 3, spec, cfg);
    const auto b = continuous_langevin(c, 3, spec, cfg);
    EXPECT_EQ(a.best_energy, b.best_energy);
    EXPECT_EQ(a.best_sequences, b.best_sequences);
    EXPECT_EQ(a.invalid_samples, b.invalid_samples);

    std::vector<Shot> shots = c.shots();
    for (auto& s : shots) s.embedding = std::vector<double>{1.0, 0.5};
    const auto ce = ShotCatalog::create(shots, std::vector<double>{1.0, 0.0});
    const auto semantic =
        EnergySpec::create(1.0, 0.0, 1.0, builtin_shot_size_matrix(), std::nullopt, std::vector<double>{1.0, 0.0});
    try {
        continuous_langevin(ce, 3, semantic, cfg);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidSpec);
    }
}
