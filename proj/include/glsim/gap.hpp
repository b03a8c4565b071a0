#pragma once

#include "glsim/interaction.hpp"
#include "glsim/lindbladian.hpp"

#include <vector>

namespace glsim {

// L~(X) = sigma^{-1/4} L(sigma^{1/4} X sigma^{1/4}) sigma^{-1/4}; Hermitian under detailed balance.
struct TildeGenerator {
    Matrix matrix;
    Matrix sigma;
    double hermiticity_residual = 0.0;
};

TildeGenerator tilde_transform(const SuperOperator& l, const Matrix& sigma);
// Same map built directly in the eigenbasis of H, better conditioned at larger beta.
TildeGenerator tilde_generator(const SpectralData& s, const JumpSet& jumps, const CoefficientTable& t, double beta);
TildeGenerator gaussian_tilde(const Matrix& h, const JumpSet& jumps, double beta);

struct GapResult {
    double gap = 0.0;        // smallest eigenvalue of -M above the kernel threshold
    int kernel_dim = 0;
    RVector eigenvalues;     // of -M, ascending
};

GapResult spectral_gap(const Matrix& m, double kernel_tol = 1e-7);

struct MixingCurve {
    std::vector<double> t;
    std::vector<double> distance;  // || e^{tL} rho - sigma ||_1
    std::vector<double> envelope;  // 2 ||sigma^-1|| e^{-t gap}
    double gap = 0.0;
};

MixingCurve mixing_curve(const TildeGenerator& lt, const Matrix& rho0, const std::vector<double>& times);

double telescopic_bound(double beta, double J, int r);

struct TelescopicRow {
    int r = 0;
    double norm = 0.0;              // || L~_{r+1} - L~_r ||_{2->2}
    double bound = 0.0;
    double support_residual = 0.0;  // commutator with operators outside the ball of radius r+1
};

struct TelescopicReport {
    int site = 0;
    int pauli = 0;
    double J = 0.0;
    std::vector<TelescopicRow> rows;
};

// Single jump sigma^pauli_site with unit weight, Gaussian filter at beta.
TelescopicReport telescopic_norms(const InteractionList& list, double beta, int site, int pauli, int r_max);

struct DepolarizingRow {
    double beta = 0.0;
    double distance = 0.0;  // || L~_{beta,0} - L~_{0,0} ||_{2->2} for one site, all three Paulis
    double bound = 0.0;
};

double depolarizing_bound(double beta, double h);  // per unit-weight jump
std::vector<DepolarizingRow> depolarizing_distance(const InteractionList& list, int site,
                                                   const std::vector<double>& betas,
                                                   double weight = kPauliTwirlWeight);

// 1 / (sqrt2 e^{1/4})
double depolarizing_rate();

}  // namespace glsim
