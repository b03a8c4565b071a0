#include "glsim/lindbladian.hpp"

#include <cmath>

namespace glsim {

void JumpSet::validate(Eigen::Index dim) const {
    if (jumps.empty()) throw InvalidArgument("jump set is empty");
    for (const auto& j : jumps) {
        if (j.op.rows() != dim || j.op.cols() != dim)
            throw InvalidArgument("jump '" + j.label + "' has wrong dimension");
        if (!(j.weight > 0) || !std::isfinite(j.weight)) throw InvalidArgument("jump '" + j.label + "' has non-positive weight");
        if (op_norm(j.op) > 1.0 + 1e-10) throw InvalidArgument("jump '" + j.label + "' has operator norm above 1");
    }
    for (const auto& j : jumps) {
        bool closed = is_hermitian(j.op, 1e-12);
        for (const auto& k : jumps)
            if (!closed && (k.op - j.op.adjoint()).cwiseAbs().maxCoeff() < 1e-12) closed = true;
        if (!closed) throw InvalidArgument("jump set is not closed under adjoint ('" + j.label + "')");
    }
}

JumpSet pauli_jumps(int n, double weight) {
    JumpSet js;
    const char names[] = {'X', 'Y', 'Z'};
    for (int a = 0; a < n; ++a)
        for (int p = 1; p <= 3; ++p)
            js.jumps.push_back({embed(pauli(p), {a}, n), weight, std::string(1, names[p - 1]) + std::to_string(a), a});
    return js;
}

JumpSet single_jump(const Matrix& a, double weight, std::string label) {
    JumpSet js;
    js.jumps.push_back({a, weight, std::move(label), -1});
    return js;
}

Matrix gibbs_state(const SpectralData& s, double beta) {
    if (!std::isfinite(beta) || beta < 0) throw InvalidArgument("gibbs_state: beta must be finite and >= 0");
    const Eigen::Index d = s.dim();
    RVector p(d);
    const double e0 = s.levels(0);
    for (Eigen::Index i = 0; i < d; ++i) p(i) = std::exp(-beta * (s.energies(i) - e0));
    p /= p.sum();
    return s.eigenvectors * p.cast<cplx>().asDiagonal() * s.eigenvectors.adjoint();
}

namespace {
void check_table(const SpectralData& s, const CoefficientTable& t) {
    if (t.bohr.size() != s.bohr.size()) throw InvalidArgument("coefficient table does not match spectrum");
    for (std::size_t k = 0; k < t.bohr.size(); ++k)
        if (std::abs(t.bohr[k] - s.bohr[k]) > s.tol) throw InvalidArgument("coefficient table does not match spectrum");
}

Eigen::MatrixXi column_bohr(const SpectralData& s) {
    const Eigen::Index d = s.dim();
    Eigen::MatrixXi bi(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) bi(i, j) = s.bohr_index(s.level_of[i], s.level_of[j]);
    return bi;
}

struct Entry {
    Eigen::Index i, j;
    cplx v;
};

std::vector<Entry> nonzeros(const Matrix& m) {
    std::vector<Entry> out;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (std::abs(m(i, j)) > 1e-15) out.push_back({i, j, m(i, j)});
    return out;
}

// sum_i conj(A_ij) A_ik coef(E_i - E_k, E_i - E_j), the (j, k) entry of sum coef A_n2^+ A_n1.
Matrix bilinear(const Matrix& ae, const Eigen::MatrixXi& bi, const Matrix& coef) {
    const Eigen::Index d = ae.rows();
    Matrix out = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
            const cplx a = std::conj(ae(i, j));
            if (a == cplx(0)) continue;
            for (Eigen::Index k = 0; k < d; ++k)
                if (ae(i, k) != cplx(0)) out(j, k) += a * ae(i, k) * coef(bi(i, k), bi(i, j));
        }
    return out;
}
}  // namespace

Matrix assemble_eigenbasis(const SpectralData& s, const JumpSet& jumps, const CoefficientTable& t) {
    check_table(s, t);
    jumps.validate(s.dim());
    const Eigen::Index d = s.dim();
    const Eigen::MatrixXi bi = column_bohr(s);
    Matrix l = Matrix::Zero(d * d, d * d);
    Matrix g = Matrix::Zero(d, d);
    for (const auto& jump : jumps.jumps) {
        Matrix ae = s.eigenvectors.adjoint() * jump.op * s.eigenvectors;
        for (Eigen::Index q = 0; q < ae.size(); ++q)
            if (std::abs(ae.data()[q]) < 1e-15) ae.data()[q] = 0;
        const auto nz = nonzeros(ae);
        const double w = jump.weight;
        for (const auto& x : nz)
            for (const auto& y : nz)
                l(x.i * d + y.i, x.j * d + y.j) += w * t.c(bi(x.i, x.j), bi(y.i, y.j)) * x.v * std::conj(y.v);
        g += w * (0.5 * bilinear(ae, bi, t.c) + I_UNIT * bilinear(ae, bi, t.b));
    }
    // -G rho - rho G^dagger with vec(X rho Y) = (X kron Y^T) vec(rho).
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
            const cplx gij = g(i, j);
            for (Eigen::Index m = 0; m < d; ++m) {
                l(i * d + m, j * d + m) -= gij;
                l(m * d + i, m * d + j) -= std::conj(gij);
            }
        }
    return l;
}

SuperOperator assemble_lindbladian(const SpectralData& s, const JumpSet& jumps, const CoefficientTable& t) {
    SuperOperator out;
    out.matrix = change_basis(assemble_eigenbasis(s, jumps, t), s.eigenvectors);
    out.picture = Picture::Schrodinger;
    return out;
}

SuperOperator assemble_lindbladian(const Matrix& h, const JumpSet& jumps, const FilterSpec& f) {
    const SpectralData s = diagonalize(h);
    return assemble_lindbladian(s, jumps, coefficients(s, f));
}

SuperOperator heisenberg_adjoint(const SuperOperator& l) {
    SuperOperator out;
    out.matrix = l.matrix.adjoint();
    out.picture = l.picture == Picture::Schrodinger ? Picture::Heisenberg : Picture::Schrodinger;
    return out;
}

Matrix coherent_decay_operator(const SpectralData& s, const JumpSet& jumps, const CoefficientTable& t, double beta) {
    check_table(s, t);
    const auto k = static_cast<Eigen::Index>(t.bohr.size());
    Matrix coef(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) coef(i, j) = -t.c(i, j) / std::cosh(beta * (t.bohr[i] - t.bohr[j]) / 4.0);
    const Eigen::MatrixXi bi = column_bohr(s);
    Matrix n = Matrix::Zero(s.dim(), s.dim());
    for (const auto& jump : jumps.jumps) {
        const Matrix ae = s.eigenvectors.adjoint() * jump.op * s.eigenvectors;
        n += jump.weight * bilinear(ae, bi, coef);
    }
    return s.eigenvectors * n * s.eigenvectors.adjoint();
}

double stationarity_residual(const SuperOperator& l, const Matrix& sigma) {
    const Matrix out = apply(l.matrix, sigma);
    return trace_norm(out);
}

double trace_residual(const SuperOperator& l) {
    const Eigen::Index d = l.dim();
    Vector id = vec(Matrix::Identity(d, d));
    return (id.adjoint() * l.matrix).cwiseAbs().maxCoeff();
}

double min_choi_eigenvalue(const SuperOperator& l, double dt) {
    const Matrix e = expm(dt * l.matrix);
    const Matrix j = choi(e);
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (j + j.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

}  // namespace glsim
