#include "glsim/gap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace glsim {

namespace {
// Multiplies entry ((i,l),(j,k)) by w_j w_k / (w_i w_l) with w = exp(-x/4); x given per basis vector.
void quarter_scale(Matrix& l, const RVector& x) {
    const Eigen::Index d = x.size();
    RVector s(d);
    for (Eigen::Index i = 0; i < d; ++i) s(i) = x(i) / 4.0;
    for (Eigen::Index c = 0; c < d * d; ++c) {
        const double cj = s(c / d) + s(c % d);
        for (Eigen::Index r = 0; r < d * d; ++r) {
            const double ri = s(r / d) + s(r % d);
            l(r, c) *= std::exp(ri - cj);
        }
    }
}

double hermiticity(const Matrix& m) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
}
}  // namespace

TildeGenerator tilde_transform(const SuperOperator& l, const Matrix& sigma) {
    if (l.picture != Picture::Schrodinger) throw InvalidArgument("tilde_transform expects a Schrodinger-picture generator");
    if (sigma.rows() != l.dim()) throw InvalidArgument("tilde_transform: state dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (sigma + sigma.adjoint()));
    const RVector& p = es.eigenvalues();
    if (p(0) <= 0) throw NumericalError("tilde_transform: state is not full rank");
    const Matrix& u = es.eigenvectors();
    Matrix m = change_basis(l.matrix, u.adjoint());
    // sigma^{-1/4} on the left, sigma^{1/4} on the right: factor (p_j p_k / (p_i p_l))^{1/4}.
    RVector x = -p.array().log();
    quarter_scale(m, x);
    TildeGenerator out;
    out.matrix = change_basis(m, u);
    out.sigma = sigma;
    out.hermiticity_residual = hermiticity(out.matrix);
    return out;
}

TildeGenerator tilde_generator(const SpectralData& s, const JumpSet& jumps, const CoefficientTable& t, double beta) {
    Matrix m = assemble_eigenbasis(s, jumps, t);
    RVector x = beta * (s.energies.array() - s.levels(0)).matrix();
    quarter_scale(m, x);
    TildeGenerator out;
    out.matrix = change_basis(m, s.eigenvectors);
    out.sigma = gibbs_state(s, beta);
    out.hermiticity_residual = hermiticity(out.matrix);
    return out;
}

TildeGenerator gaussian_tilde(const Matrix& h, const JumpSet& jumps, double beta) {
    const SpectralData s = diagonalize(h);
    return tilde_generator(s, jumps, gaussian_coefficients(s, beta), beta);
}

GapResult spectral_gap(const Matrix& m, double kernel_tol) {
    if (m.rows() != m.cols()) throw InvalidArgument("spectral_gap: matrix must be square");
    if (hermiticity(m) > 1e-8) throw InvalidArgument("spectral_gap: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(-0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("spectral_gap: eigensolver failed");
    GapResult g;
    g.eigenvalues = es.eigenvalues();
    const double tol = kernel_tol * std::max(1.0, g.eigenvalues.cwiseAbs().maxCoeff());
    g.gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < g.eigenvalues.size(); ++i) {
        const double v = g.eigenvalues(i);
        if (std::abs(v) <= tol)
            ++g.kernel_dim;
        else if (v > tol)
            g.gap = std::min(g.gap, v);
    }
    return g;
}

MixingCurve mixing_curve(const TildeGenerator& lt, const Matrix& rho0, const std::vector<double>& times) {
    const Eigen::Index d = lt.sigma.rows();
    if (rho0.rows() != d) throw InvalidArgument("mixing_curve: state dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (lt.matrix + lt.matrix.adjoint()));
    const RVector& lam = es.eigenvalues();
    const Matrix& q = es.eigenvectors();
    const Matrix sq = hermitian_power(lt.sigma, 0.25), isq = hermitian_power(lt.sigma, -0.25);
    const Vector a = q.adjoint() * vec(isq * rho0 * isq);

    MixingCurve mc;
    mc.gap = spectral_gap(lt.matrix).gap;
    Eigen::SelfAdjointEigenSolver<Matrix> ss(lt.sigma, Eigen::EigenvaluesOnly);
    const double inv_norm = 1.0 / ss.eigenvalues()(0);
    for (double t : times) {
        if (t < 0) throw InvalidArgument("mixing_curve: negative time");
        Vector e(lam.size());
        for (Eigen::Index i = 0; i < lam.size(); ++i) e(i) = std::exp(t * std::min(lam(i), 0.0)) * a(i);
        const Matrix rho = sq * unvec(q * e, d) * sq;
        mc.t.push_back(t);
        mc.distance.push_back(trace_norm_hermitian(rho - lt.sigma));
        mc.envelope.push_back(2.0 * inv_norm * std::exp(-t * mc.gap));
    }
    return mc;
}

double telescopic_bound(double beta, double J, int r) {
    using std::numbers::pi;
    const double x = beta * J / 4.0;
    const double first = 4.0 * std::exp(3.0 * pi * pi / 4.0) * std::pow(x, r);
    const double second = std::pow(std::sqrt(3.0) * x, r) / std::tgamma(1.0 + r / 2.0);
    return first + second;
}

TelescopicReport telescopic_norms(const InteractionList& list, double beta, int site, int pauli_idx, int r_max) {
    if (site < 0 || site >= list.sites()) throw InvalidArgument("telescopic_norms: site out of range");
    if (pauli_idx < 1 || pauli_idx > 3) throw InvalidArgument("telescopic_norms: Pauli index must be 1..3");
    if (r_max < 0) throw InvalidArgument("telescopic_norms: r_max must be >= 0");
    const int n = list.sites();
    const JumpSet jump = single_jump(embed(pauli(pauli_idx), {site}, n), 1.0, "A");
    std::vector<Matrix> lt;
    for (int r = 0; r <= r_max + 1; ++r) {
        const Matrix hr = build_hamiltonian(restrict_to_ball(list, site, r));
        lt.push_back(gaussian_tilde(hr, jump, beta).matrix);
    }
    TelescopicReport rep;
    rep.site = site;
    rep.pauli = pauli_idx;
    rep.J = lieb_robinson_velocity(list).J;
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> gauss;
    const Eigen::Index d = Eigen::Index(1) << n;
    for (int r = 0; r <= r_max; ++r) {
        const Matrix e = lt[r + 1] - lt[r];
        TelescopicRow row;
        row.r = r;
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (e + e.adjoint()), Eigen::EigenvaluesOnly);
        row.norm = es.eigenvalues().cwiseAbs().maxCoeff();
        row.bound = telescopic_bound(beta, rep.J, r);
        for (int o = 0; o < n; ++o) {
            if (list.geometry.distance(site, o) <= r + 1) continue;
            Matrix g(2, 2);
            for (int i = 0; i < 4; ++i) g.data()[i] = cplx(gauss(rng), gauss(rng));
            const Matrix op = embed(g, {o}, n);
            const Matrix id = Matrix::Identity(d, d);
            const Matrix left = sandwich(op, id), right = sandwich(id, op);
            row.support_residual = std::max({row.support_residual, (e * left - left * e).norm(), (e * right - right * e).norm()});
        }
        rep.rows.push_back(row);
    }
    return rep;
}

double depolarizing_rate() { return 1.0 / (std::sqrt(2.0) * std::exp(0.25)); }

double depolarizing_bound(double beta, double h) {
    const double b2 = beta * beta * h * h;
    return std::sqrt(std::numbers::pi) * std::expm1(b2) + std::expm1(0.75 * b2) * depolarizing_rate();
}

std::vector<DepolarizingRow> depolarizing_distance(const InteractionList& list, int site,
                                                   const std::vector<double>& betas, double weight) {
    if (site < 0 || site >= list.sites()) throw InvalidArgument("depolarizing_distance: site out of range");
    // The ball of radius 0 only holds single-site terms, so one qubit suffices.
    InteractionList local;
    local.geometry.sites = 1;
    for (const auto& t : list.terms)
        if (t.support.size() == 1 && t.support[0] == site) local.terms.push_back(Term{{0}, t.local});
    const Matrix h1 = build_hamiltonian(local);
    const JumpSet jumps = pauli_jumps(1, weight);
    const Matrix l0 = gaussian_tilde(h1, jumps, 0.0).matrix;
    const double hmax = locality(list).h;
    std::vector<DepolarizingRow> out;
    for (double beta : betas) {
        DepolarizingRow row;
        row.beta = beta;
        row.distance = op_norm(gaussian_tilde(h1, jumps, beta).matrix - l0);
        row.bound = 3.0 * weight * depolarizing_bound(beta, hmax);
        out.push_back(row);
    }
    return out;
}

}  // namespace glsim
