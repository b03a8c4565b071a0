#include "glsim/clock.hpp"

#include <gtest/gtest.h>

using namespace glsim;

namespace {
int count_01(const std::string& s) {
    int k = 0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) k += s[i] == '0' && s[i + 1] == '1';
    return k;
}
}  // namespace

TEST(Clock, EnergyCountsDomainWalls) {
    for (int T : {2, 5, 8})
        for (std::uint64_t s = 0; s < (std::uint64_t(1) << T); ++s)
            EXPECT_EQ(clock_energy(s, T), count_01(clock_string(s, T))) << clock_string(s, T);
}

TEST(Clock, UnaryStringsAreGround) {
    EXPECT_EQ(clock_string(unary_clock(2, 5), 5), "11000");
    for (int t = 0; t <= 6; ++t) EXPECT_EQ(clock_energy(unary_clock(t, 6), 6), 0);
    EXPECT_THROW(unary_clock(7, 6), InvalidArgument);
}

TEST(Clock, LevelDimensionsMatchBinomial) {
    for (int T = 4; T <= 14; ++T) {
        const auto dims = clock_level_dims(T);
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < dims.size(); ++i) {
            EXPECT_EQ(dims[i], clock_level_dim_formula(T, static_cast<int>(i))) << T << " " << i;
            total += dims[i];
        }
        EXPECT_EQ(total, std::uint64_t(1) << T);
    }
    EXPECT_EQ(binomial(5, 2), 10u);
    EXPECT_EQ(binomial(5, 7), 0u);
}

TEST(Clock, HamiltonianAndJumpSet) {
    const Matrix h = build_clock(4, 1);
    EXPECT_EQ(h.rows(), 32);
    EXPECT_TRUE(h.isDiagonal());
    const JumpSet j = clock_jump_set(4);
    EXPECT_EQ(j.size(), 7u);
    EXPECT_EQ(j.jumps.back().label, "X3X4");
    EXPECT_THROW(build_clock(10, 6), InvalidArgument);
}

TEST(Clock, DownhillMassAgainstDenseProjectors) {
    const int T = 5;
    const Matrix h = build_clock(T);
    const JumpSet js = clock_jump_set(T);
    const CheegerReport rep = cheeger_constant(T);
    auto proj = [&](int level) {
        Matrix p = Matrix::Zero(h.rows(), h.cols());
        for (Eigen::Index i = 0; i < h.rows(); ++i) p(i, i) = h(i, i).real() == level ? 1.0 : 0.0;
        return p;
    };
    for (std::size_t i = 1; i < rep.level_dims.size(); ++i) {
        double mass = 0;
        for (const auto& j : js.jumps) mass += (proj(int(i)) * j.op * proj(int(i) - 1) * j.op).trace().real();
        EXPECT_NEAR(mass, double(rep.downhill[i]), 1e-12) << i;
    }
}

TEST(Clock, CheegerConstantAboveLemma) {
    for (int T : {4, 8, 12}) {
        const CheegerReport r = cheeger_constant(T);
        EXPECT_TRUE(r.ok()) << T;
        EXPECT_DOUBLE_EQ(r.lemma_bound, std::min(1.0, 6.0 / ((T - 1) * (T - 1))));
    }
    EXPECT_GE(cheeger_constant(8).C, 6.0 / 49.0);
}

TEST(Clock, MoveLemmaExhaustive) {
    for (int T : {4, 8, 12}) {
        const MoveLemmaReport r = verify_move_lemma(T);
        EXPECT_TRUE(r.ok()) << T << " " << r.counterexample;
        EXPECT_EQ(r.checked, std::uint64_t(1) << T);
        EXPECT_EQ(r.raising + r.lowering, r.checked);
    }
    EXPECT_THROW(verify_move_lemma(6), InvalidArgument);
}
