#pragma once

#include "glsim/coefficients.hpp"
#include "glsim/spectral.hpp"
#include "glsim/superop.hpp"

#include <string>
#include <vector>

namespace glsim {

struct Jump {
    Matrix op;
    double weight = 1.0;  // rate multiplying this jump's contribution
    std::string label;
    int site = -1;
};

struct JumpSet {
    std::vector<Jump> jumps;

    std::size_t size() const { return jumps.size(); }
    void validate(Eigen::Index dim) const;  // ||A|| <= 1, closed under adjoint, weights > 0
};

// Pauli weight 1/4 makes the beta = 0 single-site generator equal to the standard depolarizing
// generator tr_a(X) I/2 - X times 1/(sqrt2 e^{1/4}); see the README for the normalisation note.
inline constexpr double kPauliTwirlWeight = 0.25;

JumpSet pauli_jumps(int n, double weight = kPauliTwirlWeight);
JumpSet single_jump(const Matrix& a, double weight = 1.0, std::string label = "A");

Matrix gibbs_state(const SpectralData& s, double beta);

// Generator in the eigenbasis of H (columns of s.eigenvectors). Cheaper to post-process.
Matrix assemble_eigenbasis(const SpectralData& s, const JumpSet& jumps, const CoefficientTable& t);

SuperOperator assemble_lindbladian(const SpectralData& s, const JumpSet& jumps, const CoefficientTable& t);
SuperOperator assemble_lindbladian(const Matrix& h, const JumpSet& jumps, const FilterSpec& f);

SuperOperator heisenberg_adjoint(const SuperOperator& l);

// N with (coherent + decay part in the similarity-transformed picture)(X) = (N X + X N)/2.
Matrix coherent_decay_operator(const SpectralData& s, const JumpSet& jumps, const CoefficientTable& t, double beta);

double stationarity_residual(const SuperOperator& l, const Matrix& sigma);  // ||L(sigma)||_1
double trace_residual(const SuperOperator& l);                              // max |tr L(E_ij)|
double min_choi_eigenvalue(const SuperOperator& l, double dt);              // of exp(dt L)

}  // namespace glsim
