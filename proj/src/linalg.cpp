#include "glsim/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace glsim {

Matrix pauli(int index) {
    Matrix m = Matrix::Zero(2, 2);
    switch (index) {
        case 0: m(0, 0) = 1; m(1, 1) = 1; break;
        case 1: m(0, 1) = 1; m(1, 0) = 1; break;
        case 2: m(0, 1) = -I_UNIT; m(1, 0) = I_UNIT; break;
        case 3: m(0, 0) = 1; m(1, 1) = -1; break;
        default: throw InvalidArgument("pauli index out of range: " + std::to_string(index));
    }
    return m;
}

int pauli_index(char c) {
    switch (c) {
        case 'I': return 0;
        case 'X': return 1;
        case 'Y': return 2;
        case 'Z': return 3;
        default: throw InvalidArgument(std::string("unknown Pauli letter '") + c + "'");
    }
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix embed(const Matrix& local, const std::vector<int>& support, int n) {
    const int k = static_cast<int>(support.size());
    if (local.rows() != (Eigen::Index(1) << k) || local.cols() != local.rows())
        throw InvalidArgument("embed: local operator dimension does not match support size");
    for (int s : support)
        if (s < 0 || s >= n) throw InvalidArgument("embed: site " + std::to_string(s) + " outside register");
    const std::size_t dim = std::size_t(1) << n;
    std::vector<std::size_t> mask(k);
    std::size_t full_mask = 0;
    for (int q = 0; q < k; ++q) {
        mask[q] = std::size_t(1) << (n - 1 - support[q]);
        if (full_mask & mask[q]) throw InvalidArgument("embed: repeated site in support");
        full_mask |= mask[q];
    }
    auto local_index = [&](std::size_t x) {
        std::size_t l = 0;
        for (int q = 0; q < k; ++q) l = (l << 1) | ((x & mask[q]) ? 1 : 0);
        return l;
    };
    auto with_local = [&](std::size_t x, std::size_t l) {
        std::size_t y = x & ~full_mask;
        for (int q = 0; q < k; ++q)
            if ((l >> (k - 1 - q)) & 1) y |= mask[q];
        return y;
    };
    Matrix out = Matrix::Zero(dim, dim);
    const std::size_t ldim = std::size_t(1) << k;
    for (std::size_t x = 0; x < dim; ++x) {
        const std::size_t lx = local_index(x);
        for (std::size_t ly = 0; ly < ldim; ++ly) {
            const cplx v = local(lx, ly);
            if (v != cplx(0)) out(x, with_local(x, ly)) = v;
        }
    }
    return out;
}

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, m.cwiseAbs().maxCoeff());
}

bool is_square_pow2(const Matrix& m, int* qubits) {
    if (m.rows() != m.cols() || m.rows() == 0) return false;
    const auto d = static_cast<std::uint64_t>(m.rows());
    if (d & (d - 1)) return false;
    if (qubits) {
        int q = 0;
        while ((std::uint64_t(1) << q) < d) ++q;
        *qubits = q;
    }
    return true;
}

double op_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

double trace_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues().sum();
}

double trace_norm_hermitian(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

Matrix hermitian_power(const Matrix& h, double p) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
    RVector ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) <= 0.0) throw NumericalError("hermitian_power: non-positive eigenvalue");
        ev(i) = std::pow(ev(i), p);
    }
    return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Matrix hermitian_exp(const Matrix& h, cplx scale) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
    Vector d(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = std::exp(scale * es.eigenvalues()(i));
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix expm(const Matrix& m) { return m.exp(); }

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

}  // namespace glsim
