#include "glsim/clock.hpp"
#include "glsim/coefficients.hpp"
#include "glsim/lowtemp.hpp"
#include "glsim/spectral.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace glsim;

namespace {
SuperOperator metropolis(const SpectralData& s, const JumpSet& j, double beta) {
    return assemble_lindbladian(s, j, metropolis_coefficients(s, MetropolisFilter{beta, 1.0 / beta}));
}
}  // namespace

TEST(LowTemp, ZeroTemperatureCoefficients) {
    const SpectralData s = diagonalize(build_clock(4));
    const CoefficientTable t = zero_temp_coefficients(s);
    for (std::size_t i = 0; i < s.bohr.size(); ++i) {
        const double nu = s.bohr[i];
        const double expect = nu < 0 ? 0.5 : (nu == 0 ? 0.5 * std::erfc(1 / (2 * std::sqrt(2.0))) : 0.0);
        EXPECT_NEAR(t.c(i, i).real(), expect, 1e-15);
    }
    EXPECT_EQ(t.b.norm(), 0.0);
}

TEST(LowTemp, MetropolisApproachesZeroTemperature) {
    const SpectralData s = diagonalize(build_clock(4));
    const JumpSet j = clock_jump_set(4);
    const SuperOperator l0 = zero_temp_generator(s, j);
    double prev = 1e9;
    for (double beta : {5.0, 10.0, 20.0}) {
        const double d = norm_2to2((metropolis(s, j, beta).matrix - l0.matrix));
        EXPECT_LT(d, prev);
        prev = d;
    }
    EXPECT_LT(prev, 1e-6);
}

TEST(LowTemp, InducedNormsOfKnownMaps) {
    // Identity and transpose both have 1->1 norm 1; the transpose has 2->2 norm 1 as well.
    const Eigen::Index d = 3;
    const Matrix id = Matrix::Identity(d * d, d * d);
    Matrix tr = Matrix::Zero(d * d, d * d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) tr(j * d + i, i * d + j) = 1;
    EXPECT_NEAR(induced_norm(id, NormKind::OneToOne, 20).lower_bound, 1.0, 1e-10);
    EXPECT_NEAR(induced_norm(tr, NormKind::OneToOne, 20).lower_bound, 1.0, 1e-10);
    EXPECT_NEAR(induced_norm(tr, NormKind::TwoToTwo).lower_bound, 1.0, 1e-12);
    // X -> A X A^dag has 1->1 norm ||A||^2 and inf->inf norm ||A||^2 as well.
    std::mt19937_64 rng(3);
    const Matrix a = test::random_matrix(d, rng);
    const double na = op_norm(a);
    EXPECT_NEAR(induced_norm(sandwich(a, a.adjoint()), NormKind::OneToOne, 50).lower_bound, na * na, 1e-8);
    EXPECT_NEAR(induced_norm(sandwich(a, a.adjoint()), NormKind::InfToInf, 50).lower_bound, na * na, 1e-8);
}

TEST(LowTemp, LowerBoundNeverExceedsTrueNorm) {
    // A random map: the certified value is attained by some rank-one input, so it must not exceed
    // the exact 1->1 norm bound sqrt(d) * ||S||_{2->2}.
    std::mt19937_64 rng(5);
    const Matrix s = test::random_matrix(9, rng);
    const double lb = induced_norm(s, NormKind::OneToOne, 30).lower_bound;
    EXPECT_LE(lb, std::sqrt(3.0) * norm_2to2(s) + 1e-12);
    EXPECT_GT(lb, 0);
}

TEST(LowTemp, NormKindParsing) {
    EXPECT_EQ(parse_norm_kind("1->1"), NormKind::OneToOne);
    EXPECT_EQ(parse_norm_kind("inf->inf"), NormKind::InfToInf);
    EXPECT_THROW(parse_norm_kind("3->3"), InvalidArgument);
    EXPECT_STREQ(norm_kind_name(NormKind::TwoToTwo), "2->2");
}

TEST(LowTemp, ContinuityBoundHolds) {
    const SpectralData s = diagonalize(build_clock(4));
    const JumpSet j = clock_jump_set(4);
    const SuperOperator l0 = zero_temp_generator(s, j);
    for (double beta : {5.0, 10.0}) {
        const double lb = generator_distance(l0, metropolis(s, j, beta), NormKind::OneToOne, 30).lower_bound;
        EXPECT_LE(lb, zero_temp_distance_bound(7, s.num_levels(), beta, s.delta_E, s.delta_nu));
    }
    EXPECT_THROW(zero_temp_distance_bound(7, 3, 0.1, 1.0, 1.0), InvalidArgument);
}

TEST(LowTemp, MetropolisCoefficientBounds) {
    const SpectralData s = diagonalize(build_clock(4));
    for (double beta : {1.0, 10.0, 100.0}) {
        const MetropolisBounds b = metropolis_coefficient_bounds(s, beta);
        EXPECT_TRUE(b.ok()) << beta;
        EXPECT_LT(b.zero_zero, 1e-12);
    }
}

TEST(LowTemp, PerturbationBoundMinimisesOverEta) {
    const PerturbationBound pb = perturbation_bound(7, 5.0, 3.0, 1e-3);
    EXPECT_GT(pb.eta, 0);
    EXPECT_LT(pb.eta, 1);
    for (double eta : {1e-6, 1e-4, 1e-2, 0.5}) EXPECT_LE(pb.value, perturbation_rhs(7, 5.0, 3.0, 1e-3, eta) + 1e-12);
}

TEST(LowTemp, LaplaceTransformStable) {
    const Matrix h = build_clock(4);
    const Matrix rho = Matrix::Identity(16, 16) / 16.0;
    // tr(rho e^{theta H}) by direct diagonal sum.
    double direct = 0;
    for (int i = 0; i < 16; ++i) direct += std::exp(0.1 * h(i, i).real()) / 16.0;
    EXPECT_NEAR(laplace_transform(rho, h, 0.1), direct, 1e-13);
    EXPECT_NEAR(laplace_transform(rho, h, 0.0), 1.0, 1e-14);
}

TEST(LowTemp, LevelChainMatchesFullEvolution) {
    const Matrix h = build_clock(4);
    const JumpSet j = clock_jump_set(4);
    LaplaceOptions chain, full;
    full.use_level_chain = false;
    const std::vector<double> times = {0, 1, 10, 100};
    const LaplaceCurve a = laplace_curve(h, j, 0.1, times, cheeger_lemma_bound(4), chain);
    const LaplaceCurve b = laplace_curve(h, j, 0.1, times, cheeger_lemma_bound(4), full);
    for (std::size_t i = 0; i < times.size(); ++i) {
        EXPECT_NEAR(a.value[i], b.value[i], 1e-10);
        EXPECT_NEAR(a.ground_population[i], b.ground_population[i], 1e-10);
        EXPECT_LE(a.value[i], a.bound[i]);
    }
    const auto herbst = herbst_overlap_bound(a, a.E1);
    for (std::size_t i = 0; i < times.size(); ++i) EXPECT_LE(1 - a.ground_population[i], herbst[i] + 1e-12);
}

TEST(LowTemp, LevelChainIsStochastic) {
    const LevelChain c = level_chain(build_clock(4), clock_jump_set(4));
    for (Eigen::Index k = 0; k < c.rates.cols(); ++k) EXPECT_NEAR(c.rates.col(k).sum(), 0.0, 1e-13);
    RVector p = RVector::Constant(16, 1.0 / 16);
    const RVector q = c.evolve(p, 3.0);
    EXPECT_NEAR(q.sum(), 1.0, 1e-12);
    EXPECT_GE(q.minCoeff(), -1e-14);
}

TEST(LowTemp, LevelChainRejectsNonDiagonal) {
    Matrix h = build_clock(2);
    h(0, 1) = h(1, 0) = 0.3;
    EXPECT_THROW(level_chain(h, clock_jump_set(2)), InvalidArgument);
}
