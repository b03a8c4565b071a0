#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace glsim {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr cplx I_UNIT{0.0, 1.0};

struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Single-qubit Paulis, index 0..3 = I, X, Y, Z.
Matrix pauli(int index);
int pauli_index(char c);

Matrix kron(const Matrix& a, const Matrix& b);

// Places a k-qubit operator on `support` inside an n-qubit register.
// Qubit 0 is the most significant bit of the basis index.
Matrix embed(const Matrix& local, const std::vector<int>& support, int n);

bool is_hermitian(const Matrix& m, double tol = 1e-10);
bool is_square_pow2(const Matrix& m, int* qubits = nullptr);

double op_norm(const Matrix& m);     // largest singular value
double trace_norm(const Matrix& m);  // sum of singular values
double trace_norm_hermitian(const Matrix& m);

// f(H) for Hermitian H by eigendecomposition.
Matrix hermitian_power(const Matrix& h, double p);
Matrix hermitian_exp(const Matrix& h, cplx scale);

Matrix expm(const Matrix& m);

Matrix commutator(const Matrix& a, const Matrix& b);

}  // namespace glsim
