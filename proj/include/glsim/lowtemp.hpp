#pragma once

#include "glsim/lindbladian.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace glsim {

// Coefficients of the beta -> infinity Metropolis generator: c(nu, nu) = 1/2 for nu < 0,
// erfc(1/(2 sqrt2)) / 2 for nu = 0, zero otherwise; no coherent part.
CoefficientTable zero_temp_coefficients(const SpectralData& s);
SuperOperator zero_temp_generator(const SpectralData& s, const JumpSet& jumps);

enum class NormKind { OneToOne, InfToInf, TwoToTwo };

NormKind parse_norm_kind(const std::string& s);
const char* norm_kind_name(NormKind k);

struct DistanceEstimate {
    double lower_bound = 0.0;  // exact for 2->2
    std::string method;
};

// 1->1 is maximised over rank-one inputs |psi><phi| (the extreme points of the trace-norm
// ball) with random restarts and an alternating refinement; inf->inf uses the adjoint.
DistanceEstimate induced_norm(const Matrix& s, NormKind kind, int restarts = 200, std::uint64_t seed = 7);
DistanceEstimate generator_distance(const SuperOperator& a, const SuperOperator& b, NormKind kind,
                                    int restarts = 200, std::uint64_t seed = 7);

// 3 m M^4 max{exp(-beta^2 dnu^2 / 8), 4 beta dE / (2 beta dE - 1) exp(-beta dE / 4)}
double zero_temp_distance_bound(int m, int M, double beta, double delta_E, double delta_nu);

// Pointwise coefficient bounds used in the continuity argument.
struct MetropolisBounds {
    double zero_zero = 0.0;         // |alpha_00 - erfc(1/(2 sqrt2))/2|
    double diag_negative = 0.0;     // max over nu < 0 of |alpha_nu,nu - 1/2|
    double diag_negative_bound = 0.0;
    double diag_positive = 0.0;     // max over nu > 0 of alpha_nu,nu
    double diag_positive_bound = 0.0;
    double off_diag_ratio = 0.0;    // max |alpha_12| / exp(-beta^2 (nu1-nu2)^2 / 8)
    double coherent_ratio = 0.0;    // max |b_12| / (|alpha_12| / 2)
    bool ok() const;
};

MetropolisBounds metropolis_coefficient_bounds(const SpectralData& s, double beta);

// Right-hand side m beta (C1 eta (||H0|| + ||V||) + C2 ||V|| (1 + ln(1/eta))).
inline constexpr double kPerturbationC1 = 8.0;
inline constexpr double kPerturbationC2 = 72.0;

struct PerturbationBound {
    double value = 0.0;
    double eta = 0.0;
    double C1 = kPerturbationC1;
    double C2 = kPerturbationC2;
};

double perturbation_rhs(int m, double beta, double h0_norm, double v_norm, double eta,
                        double C1 = kPerturbationC1, double C2 = kPerturbationC2);
// Minimum over a log grid of eta in [1e-12, 1).
PerturbationBound perturbation_bound(int m, double beta, double h0_norm, double v_norm,
                                     double C1 = kPerturbationC1, double C2 = kPerturbationC2);

// tr(rho exp(theta H)), evaluated as exp(theta E_max) tr(rho exp(theta (H - E_max))).
double laplace_transform(const Matrix& rho, const Matrix& h, double theta);

// Classical chain on computational-basis populations. Exact for L_inf when H is diagonal and
// every jump maps basis states to multiples of basis states.
struct LevelChain {
    RVector energies;              // per basis state
    std::vector<int> level_of;
    RVector levels;
    Eigen::MatrixXd rates;         // column-stochastic generator: dp/dt = rates p

    Eigen::Index dim() const { return energies.size(); }
    RVector evolve(const RVector& p0, double t) const;
    RVector level_populations(const RVector& p) const;
};

LevelChain level_chain(const Matrix& h0, const JumpSet& jumps);

enum class Dynamics { ZeroTemperature, Metropolis };

struct LaplaceOptions {
    Dynamics dynamics = Dynamics::ZeroTemperature;
    double beta = 0.0;               // Metropolis only
    std::optional<Matrix> rho0;      // default: maximally mixed
    bool use_level_chain = true;     // zero-temperature fast path
};

struct LaplaceCurve {
    double theta = 0.0;
    double C = 0.0;
    double delta_E = 0.0;
    double h0_norm = 0.0;
    double E1 = 0.0;
    std::vector<double> t;
    std::vector<double> value;               // tr(rho_t exp(theta H0)), H0 shifted to E_0 = 0
    std::vector<double> bound;               // 1 + exp(-(C/2) theta dE exp(-dE theta) t + theta ||H0||)
    std::vector<double> ground_population;   // tr(P_0 rho_t)
};

double laplace_lemma_bound(double theta, double C, double delta_E, double h0_norm, double t);

LaplaceCurve laplace_curve(const Matrix& h0, const JumpSet& jumps, double theta, const std::vector<double>& times,
                           double C, const LaplaceOptions& opt = {});

// exp(-theta E1) L(theta, t) per sample; bounds 1 - tr(P_0 rho_t).
std::vector<double> herbst_overlap_bound(const LaplaceCurve& curve, double E1);

}  // namespace glsim
