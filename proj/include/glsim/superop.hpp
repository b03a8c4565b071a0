#pragma once

#include "glsim/linalg.hpp"

#include <iosfwd>
#include <string>

namespace glsim {

// Row-major vectorization: vec(rho)[i*d + j] = rho(i, j), so that
// vec(X rho Y) = (X kron Y^T) vec(rho).
enum class Picture { Schrodinger, Heisenberg };

const char* picture_name(Picture p);

struct SuperOperator {
    Matrix matrix;  // d^2 x d^2
    Picture picture = Picture::Schrodinger;

    Eigen::Index dim() const;  // d
};

Vector vec(const Matrix& rho);
Matrix unvec(const Vector& v, Eigen::Index d);

// Matrix of X -> A X B.
Matrix sandwich(const Matrix& a, const Matrix& b);

Matrix apply(const Matrix& s, const Matrix& rho);

// Returns W S W^dagger with W = V kron conj(V); maps a superoperator written
// in the basis given by the columns of V back to the standard basis.
Matrix change_basis(const Matrix& s, const Matrix& v);

// Choi matrix sum_ij |i><j| kron Phi(|i><j|).
Matrix choi(const Matrix& s);

double norm_2to2(const Matrix& s);

// Coordinates in the orthonormal Hermitian basis {E_ii, (E_ij + E_ji)/sqrt2, i(E_ij - E_ji)/sqrt2}.
// A Hermiticity-preserving map is a real matrix in this basis, which halves storage and
// quarters the cost of products.
Eigen::MatrixXd hermitian_real_form(const Matrix& s);
RVector hermitian_coords(const Matrix& x);
Matrix from_hermitian_coords(const RVector& c, Eigen::Index d);

// Binary cache: magic, version, dim, picture, convention tag, then row-major complex128.
void save_superop(const SuperOperator& s, const std::string& path);
SuperOperator load_superop(const std::string& path);

}  // namespace glsim
