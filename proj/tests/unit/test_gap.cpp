#include "glsim/coefficients.hpp"
#include "glsim/gap.hpp"
#include "glsim/interaction.hpp"
#include "glsim/lindbladian.hpp"
#include "glsim/spectral.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace glsim;

namespace {
const double kRate = 1.0 / (std::sqrt(2.0) * std::exp(0.25));
}

TEST(Gap, InfiniteTemperatureGapIsDepolarizingRate) {
    for (int n : {1, 2, 3}) {
        const InteractionList l = n == 1 ? InteractionList{{1, false}, {pauli_term(0.7, "X0")}} : tfim(n);
        const GapResult g = spectral_gap(gaussian_tilde(build_hamiltonian(l), pauli_jumps(n), 0.0).matrix);
        EXPECT_NEAR(g.gap, kRate, 1e-10) << n;
        EXPECT_EQ(g.kernel_dim, 1);
    }
    EXPECT_NEAR(depolarizing_rate(), kRate, 1e-15);
}

TEST(Gap, KernelIsPurifiedGibbsState) {
    const Matrix h = build_hamiltonian(tfim(3, 1.2, 0.7));
    const SpectralData s = diagonalize(h);
    const double beta = 0.6;
    const TildeGenerator lt = tilde_generator(s, pauli_jumps(3), gaussian_coefficients(s, beta), beta);
    const Vector root = vec(hermitian_power(gibbs_state(s, beta), 0.5));
    EXPECT_LT((lt.matrix * root).norm(), 1e-11);
    EXPECT_NEAR(root.norm(), 1.0, 1e-12);
}

TEST(Gap, SpectrumIsRealAndNonPositive) {
    const Matrix h = build_hamiltonian(random_two_local_chain(3, 5));
    const GapResult g = spectral_gap(gaussian_tilde(h, pauli_jumps(3), 1.0).matrix);
    EXPECT_GE(g.eigenvalues(0), -1e-10);
    EXPECT_GT(g.gap, 0.0);
}

TEST(Gap, HalfGapHoldsAtHighTemperature) {
    for (int n : {3, 4})
        for (double beta : {0.0, 0.05, 0.1}) {
            const GapResult g = spectral_gap(gaussian_tilde(build_hamiltonian(tfim(n)), pauli_jumps(n), beta).matrix);
            EXPECT_GE(g.gap, 0.5 * kRate) << n << " " << beta;
        }
}

TEST(Gap, MixingBelowEnvelope) {
    const Matrix h = build_hamiltonian(tfim(2));
    const SpectralData s = diagonalize(h);
    const TildeGenerator lt = tilde_generator(s, pauli_jumps(2), gaussian_coefficients(s, 0.5), 0.5);
    Matrix rho = Matrix::Zero(4, 4);
    rho(3, 3) = 1;
    const MixingCurve mc = mixing_curve(lt, rho, {0, 1, 2, 5, 10});
    for (std::size_t i = 0; i < mc.t.size(); ++i) EXPECT_LE(mc.distance[i], mc.envelope[i] + 1e-12);
    for (std::size_t i = 1; i < mc.t.size(); ++i) EXPECT_LE(mc.distance[i], mc.distance[i - 1] + 1e-12);
    EXPECT_NEAR(mc.distance.back(), 0.0, 1e-1);
}

TEST(Gap, TelescopicIncrementsBoundedAndLocal) {
    const TelescopicReport rep = telescopic_norms(tfim(5), 0.05, 2, 1, 3);
    ASSERT_EQ(rep.rows.size(), 4u);
    for (const auto& r : rep.rows) {
        if (r.r <= 2) EXPECT_LE(r.norm, r.bound);
        EXPECT_LT(r.support_residual, 1e-8);
    }
    EXPECT_LT(rep.rows[2].norm, 1e-12);
    EXPECT_LT(rep.rows[3].norm, 1e-12);
    // Decay with radius.
    EXPECT_LT(rep.rows[1].norm, rep.rows[0].norm);
}

TEST(Gap, TelescopicBoundShape) {
    EXPECT_GT(telescopic_bound(0.05, 5.0, 0), telescopic_bound(0.05, 5.0, 1));
    EXPECT_GT(telescopic_bound(0.05, 5.0, 1), telescopic_bound(0.05, 5.0, 2));
}

TEST(Gap, DepolarizingDistanceIsFirstOrder) {
    // Single qubit H = Z, one unit-weight X jump.
    InteractionList l{{1, false}, {pauli_term(1.0, "Z0")}};
    std::vector<double> grid;
    for (int k = 0; k <= 30; ++k) grid.push_back(0.01 * k);
    const auto rows = depolarizing_distance(l, 0, grid, 1.0);
    EXPECT_LT(rows[0].distance, 1e-12);
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GT(rows[i].distance, rows[i - 1].distance - 1e-9);
    // Linear onset: distance / beta is nearly constant near zero.
    EXPECT_NEAR(rows[1].distance / 0.01, rows[2].distance / 0.02, 0.02 * rows[1].distance / 0.01);
    // The closed-form estimate is second order, so it is violated at small beta (ledgered).
    EXPECT_GT(rows[1].distance, rows[1].bound);
    EXPECT_GT(rows[10].distance, rows[10].bound);
    EXPECT_LT(rows[30].distance, rows[30].bound);
}

TEST(Gap, RejectsMismatchedState) {
    const SpectralData s = diagonalize(build_hamiltonian(tfim(2)));
    const SuperOperator l = assemble_lindbladian(s, pauli_jumps(2), gaussian_coefficients(s, 1.0));
    EXPECT_THROW(tilde_transform(l, Matrix::Identity(2, 2)), InvalidArgument);
    EXPECT_THROW(tilde_transform(heisenberg_adjoint(l), gibbs_state(s, 1.0)), InvalidArgument);
}
