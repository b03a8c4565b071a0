#pragma once

#include "glsim/linalg.hpp"

#include <limits>
#include <vector>

namespace glsim {

// Eigendecomposition of a Hermitian H with degenerate eigenvalues merged into levels.
struct SpectralData {
    RVector levels;                 // ascending distinct energies E_1 < ... < E_M
    std::vector<int> degeneracy;    // multiplicity of each level
    Matrix eigenvectors;            // columns grouped by level
    std::vector<int> level_of;      // level index of each column
    RVector energies;               // per column, snapped to its level energy
    std::vector<double> bohr;       // ascending distinct Bohr frequencies
    Eigen::MatrixXi bohr_index;     // (i, j) -> index of E_i - E_j in `bohr`
    double delta_E = std::numeric_limits<double>::infinity();   // min level spacing
    double delta_nu = std::numeric_limits<double>::infinity();  // min Bohr spacing
    double tol = 0.0;

    Eigen::Index dim() const { return eigenvectors.rows(); }
    int num_levels() const { return static_cast<int>(levels.size()); }
    Matrix projector(int level) const;
    int find_bohr(double nu) const;  // -1 when absent
};

// tol < 0 selects 1e-9 * max(1, ||H||).
SpectralData diagonalize(const Matrix& h, double tol = -1.0);

struct BohrComponent {
    double nu;
    Matrix op;
};

// A = sum_nu A_nu with A_nu = sum_{E_i - E_j = nu} P_i A P_j; zero components dropped.
std::vector<BohrComponent> bohr_decompose(const Matrix& a, const SpectralData& s);

}  // namespace glsim
