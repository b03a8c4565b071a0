#include "glsim/coefficients.hpp"
#include "glsim/interaction.hpp"
#include "glsim/spectral.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace glsim;
using boost::math::quadrature::gauss_kronrod;
using std::numbers::pi;

namespace {

// c(nu1, nu2) as the filter-weighted overlap of two shifted windows.
double c_by_quadrature(double nu1, double nu2, double beta) {
    auto f = [&](double w) { return gaussian_gamma(w, beta) * gaussian_window_hat(w - nu1, beta) * gaussian_window_hat(w - nu2, beta); };
    const double mid = 0.5 * (nu1 + nu2), half = 40.0 / beta + 10.0;
    return gauss_kronrod<double, 61>::integrate(f, mid - half, mid + half, 15, 1e-14);
}

// Metropolis coefficient: unit-mass Gaussian windows of width sigma, halved.
double alpha_by_quadrature(double nu1, double nu2, double beta, double sigma) {
    auto f = [&](double w) {
        return metropolis_gamma(w, beta, sigma) *
               std::exp(-((w - nu1) * (w - nu1) + (w - nu2) * (w - nu2)) / (4 * sigma * sigma));
    };
    const double kink = -0.5 * beta * sigma * sigma, half = 40.0 * sigma + 5.0;
    const double lo = std::min(nu1, nu2) - half, hi = std::max(nu1, nu2) + half;
    double v = 0;
    if (kink > lo) v += gauss_kronrod<double, 61>::integrate(f, lo, std::min(kink, hi), 15, 1e-14);
    if (kink < hi) v += gauss_kronrod<double, 61>::integrate(f, std::max(kink, lo), hi, 15, 1e-14);
    return v / (2 * sigma * std::sqrt(2 * pi));
}

}  // namespace

TEST(Coefficients, GaussianClosedFormMatchesQuadrature) {
    for (double beta : {0.3, 1.0, 2.5})
        for (double nu1 : {-1.7, -0.2, 0.0, 0.9})
            for (double nu2 : {-1.1, 0.0, 0.4, 2.0})
                EXPECT_NEAR(gaussian_c(nu1, nu2, beta), c_by_quadrature(nu1, nu2, beta), 1e-12)
                    << nu1 << " " << nu2 << " " << beta;
}

TEST(Coefficients, WindowIsNormalised) {
    for (double beta : {0.5, 2.0}) {
        auto f = [&](double t) { return gaussian_window(t, beta) * gaussian_window(t, beta); };
        EXPECT_NEAR((gauss_kronrod<double, 61>::integrate(f, -30 * beta, 30 * beta, 15, 1e-14)), 1.0, 1e-12);
    }
}

TEST(Coefficients, InfiniteTemperatureValue) {
    EXPECT_NEAR(gaussian_c(0.3, -2.0, 0.0), 1.0 / (std::sqrt(2.0) * std::exp(0.25)), 1e-15);
    EXPECT_NEAR(gaussian_c(0.0, 0.0, 0.0), 0.550695314903, 1e-12);
}

TEST(Coefficients, DetailedBalanceOfGaussianC) {
    // c(-nu2, -nu1) = exp(beta (nu1 + nu2) / 2) c(nu1, nu2).
    for (double beta : {0.4, 1.3})
        for (double a : {-0.8, 0.1, 1.5})
            for (double b : {-1.2, 0.6}) {
                const double lhs = gaussian_c(-b, -a, beta), rhs = std::exp(beta * (a + b) / 2) * gaussian_c(a, b, beta);
                EXPECT_NEAR(lhs / rhs, 1.0, 1e-12);
            }
}

TEST(Coefficients, CoherentTermFromFourierPieces) {
    // The product of the two Fourier pieces is half of the coherent coefficient.
    for (double beta : {0.7, 2.0})
        for (double a : {-1.0, 0.3})
            for (double b : {-0.4, 1.2}) {
                const cplx prod = b1_hat(beta * (a - b)) * b2_hat(beta * (a + b));
                const cplx coh = coherent_b(a, b, beta, gaussian_c(a, b, beta));
                EXPECT_LT(std::abs(coh - 2.0 * prod), 1e-15);
                EXPECT_NEAR(std::real(coh), 0.0, 1e-15);
            }
}

TEST(Coefficients, ErfcxAgainstBoost) {
    for (double z : {-2.0, 0.0, 0.5, 3.0, 4.9, 5.1, 8.0, 20.0, 100.0}) {
        const double ref = z < 25 ? std::exp(z * z) * boost::math::erfc(z) : 1.0 / (z * std::sqrt(pi)) * (1 - 0.5 / (z * z));
        EXPECT_NEAR(erfcx(z) / ref, 1.0, z < 25 ? 1e-12 : 1e-6) << z;
    }
}

TEST(Coefficients, MetropolisClosedFormMatchesQuadrature) {
    for (double beta : {0.5, 2.0, 10.0})
        for (double sigma : {1.0 / beta, 0.7})
            for (double nu1 : {-1.0, 0.0, 0.5})
                for (double nu2 : {-1.0, 0.0, 0.8})
                    EXPECT_NEAR(metropolis_alpha(nu1, nu2, beta, sigma), alpha_by_quadrature(nu1, nu2, beta, sigma), 1e-11)
                        << nu1 << " " << nu2 << " " << beta << " " << sigma;
}

TEST(Coefficients, MetropolisZeroFrequency) {
    const double expect = 0.5 * std::erfc(1.0 / (2.0 * std::sqrt(2.0)));
    for (double beta : {1.0, 10.0, 100.0}) EXPECT_NEAR(metropolis_alpha(0, 0, beta, 1.0 / beta), expect, 1e-13);
}

TEST(Coefficients, MetropolisLargeBetaIsFinite) {
    const double a = metropolis_alpha(3.0, 3.0, 200.0, 1.0 / 200.0);
    EXPECT_TRUE(std::isfinite(a));
    EXPECT_GE(a, 0.0);
    EXPECT_NEAR(metropolis_alpha(-3.0, -3.0, 200.0, 1.0 / 200.0), 0.5, 1e-12);
}

TEST(Coefficients, TableLookupAndValidation) {
    const SpectralData s = diagonalize(build_hamiltonian(tfim(2)));
    const CoefficientTable t = gaussian_coefficients(s, 1.0);
    EXPECT_EQ(t.c.rows(), static_cast<Eigen::Index>(s.bohr.size()));
    EXPECT_THROW(t.index(0.123456), InvalidArgument);
    EXPECT_THROW(gaussian_coefficients(s, -1.0), InvalidArgument);
    EXPECT_THROW(metropolis_coefficients(s, MetropolisFilter{0.0, 0.0}), InvalidArgument);
}
